#ifndef TOWERLAB_FIXTURES_HPP
#define TOWERLAB_FIXTURES_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "towerlab/tower.hpp"

namespace towerlab {

class FixtureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// t(t-1) u'' + (2t-1) u' + u/4.
FuchsianOperator gauss_operator(const Field& f);
/// Hypergeometric operator on the j-line with exponents (0,1/3), (0,1/2), (1/12,1/12)
/// at 0, 1728 and infinity.  Needs p >= 5.
FuchsianOperator j_line_operator(const Field& f);
/// y(y-1)(y+8) u'' + (3y^2+14y-8) u' + (y+2) u on X_0(6).
FuchsianOperator x0_6_operator(const Field& f);

/// 16 s^2 / (s-1)^4.
RatFunc exaprop_cover(const Field& f);
/// -n (n/(n-1))^(n-1) (s^n - s^(n-1)).
RatFunc goodexa_cover(const Field& f, unsigned n);

/// The X_0(3) -> X(1) and X_0(6) -> X_0(3) coordinates, and the two involutions.
RatFunc j_of_x0_3(const Field& f);
RatFunc x0_3_of_x0_6(const Field& f);
RatFunc sigma6(const Field& f);
RatFunc sigma18(const Field& f);

struct ModularMapCheck {
  RatFunc h;            // sigma6 o z^3 o sigma18
  bool h_matches = false;  // equals z(z^2-2z+4)/(z^2+z+1)
  bool sigma6_involution = false;
  bool sigma18_involution = false;
  bool operator_matches = false;  // x0_6_operator is a twist of the pulled-back j-line operator
};
ModularMapCheck check_x0_2_3m_maps(std::uint32_t p);

struct Fixture {
  std::string name;
  std::string summary;
  TowerSpec spec;
  std::optional<PullbackData> pullback;  // relative to `base`
  std::string base;
};

std::vector<std::string> tower_fixture_names();
std::vector<std::string> operator_fixture_names();
/// "x0-2m", "exaprop" or "x0-2-3m" over F_p, validated.
Fixture tower_fixture(const std::string& name, std::uint32_t p);
/// "gauss", "j-line", "x0-6" or "lf" (gauss pulled back along 16s^2/(s-1)^4).
FuchsianOperator operator_fixture(const std::string& name, std::uint32_t p);

/// (y^2-1)^(2p-2) Phi_f(y^2) = (y^2+1)^(2p-2) Phi_f(-y(y-1)/(y+1)) with Phi_f = Phi o f.
bool exaprop_identity_holds(std::uint32_t p);

}  // namespace towerlab

#endif  // TOWERLAB_FIXTURES_HPP
