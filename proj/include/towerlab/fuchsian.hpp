#ifndef TOWERLAB_FUCHSIAN_HPP
#define TOWERLAB_FUCHSIAN_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "towerlab/ratfunc.hpp"

namespace towerlab {

/// The monic operator L(u) = u'' + a1 u' + a2 u.
struct FuchsianOperator {
  RatFunc a1;
  RatFunc a2;

  /// a0 u'' + a1 u' + a2 u, divided through by a0.
  static FuchsianOperator from_coefficients(const RatFunc& a0, const RatFunc& a1, const RatFunc& a2);
  const Field& field() const { return a1.field(); }
  bool operator==(const FuchsianOperator& o) const { return a1 == o.a1 && a2 == o.a2; }
};

class IrregularSingularity : public std::runtime_error {
 public:
  IrregularSingularity(PlaceP1 place, int ord_a1, int ord_a2);
  PlaceP1 place;
  int ord_a1;
  int ord_a2;
};

struct SingularPointData {
  PlaceP1 place;
  Field field;  // F_{p^(2 deg place)}, where c1, c2 and the exponents live
  Residue c1 = 0;
  Residue c2 = 0;
  Residue gamma1 = 0;
  Residue gamma2 = 0;
  bool regular = true;
  bool apparent = false;
};

RatFunc apply_operator(const FuchsianOperator& L, const RatFunc& u);

/// The same operator in the chart t = 1/x at infinity.
FuchsianOperator at_infinity(const FuchsianOperator& L);
/// Places where a1 or a2 has a pole, infinity included when applicable.
std::vector<PlaceP1> singular_places(const FuchsianOperator& L);
/// Indicial data at any place; throws IrregularSingularity.
SingularPointData local_data(const FuchsianOperator& L, const PlaceP1& P);
std::vector<SingularPointData> singular_points(const FuchsianOperator& L);
/// Exponents ordered by encoding.
std::pair<Residue, Residue> local_exponents(const FuchsianOperator& L, const PlaceP1& P);

/// "c/d" with d <= 12, p not dividing d and |c| + d minimal, for prime-field
/// values; empty otherwise.  Presentation only.
std::string rational_lift(const Field& k, Residue x);

FuchsianOperator pullback_operator(const FuchsianOperator& L, const RatFunc& f);
FuchsianOperator twist_operator(const FuchsianOperator& L, const RatFunc& B);
/// B with twist(L1, B) = L2 whose poles lie in the singular set of L1.
std::optional<RatFunc> find_twist(const FuchsianOperator& L1, const FuchsianOperator& L2);

struct AdaptedReport {
  bool adapted = false;
  std::optional<RatFunc> twist;
};
AdaptedReport check_adapted(const RatFunc& g, const RatFunc& h, const FuchsianOperator& L);

struct PolynomialSolutions {
  std::vector<Poly> basis;  // reduced echelon form, monic, ascending degree
  /// Residues -gamma mod p of the exponents at infinity lying in F_p.
  std::vector<Residue> degree_classes;
};
PolynomialSolutions polynomial_solutions(const FuchsianOperator& L, int deg_bound);

/// ord_P(u) mod p is an exponent at P (or 0, 1 where L is regular).
bool order_exponent_congruence(const FuchsianOperator& L, const RatFunc& u, const PlaceP1& P);

struct DivisorCongruence {
  bool premise = false;    // ord_P(u1) = ord_P(u2) mod p
  bool congruent = false;  // div(u1) = div(u2) mod p
};
DivisorCongruence divisor_congruence(const FuchsianOperator& L, const RatFunc& u1, const RatFunc& u2,
                                     const PlaceP1& P);

struct FepropReport {
  bool adapted = false;
  bool equal_exponents = false;  // hypothesis: some singularity with equal exponents
  bool holds = false;            // supp(D) within the given set
  DivisorP1 D;                   // div(Phi o g) - div(Phi o h), reduced mod p
};
FepropReport check_feprop(const RatFunc& g, const RatFunc& h, const FuchsianOperator& L, const RatFunc& phi,
                          const std::vector<PlaceP1>& frak_s);

class NotASolution : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace towerlab

#endif  // TOWERLAB_FUCHSIAN_HPP
