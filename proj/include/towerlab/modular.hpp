#ifndef TOWERLAB_MODULAR_HPP
#define TOWERLAB_MODULAR_HPP

#include <boost/rational.hpp>
#include <cstdint>
#include <vector>

#include "towerlab/poly.hpp"

namespace towerlab {

using Rational = boost::rational<std::int64_t>;

/// sum_i binom((p-1)/2, i)^2 x^i over F_p.
Poly deuring_poly(std::uint32_t p);

struct SupersingularData {
  std::uint32_t p = 0;
  Poly phi;          // Deuring polynomial
  Poly phi1;         // prod (j - j(E)) over supersingular j(E)
  Poly phi1_tilde;   // phi1 / (j^delta (j - 1728)^eps)
  std::vector<Residue> j_values;  // supersingular j in F_{p^2}, ascending
  unsigned alpha = 0;
  unsigned delta = 0;
  unsigned eps = 0;
  bool shape_ok = false;       // phi1 factors as j^delta (j-1728)^eps phi1_tilde with deg alpha
  bool simple_zeros = false;   // gcd(phi1_tilde, phi1_tilde') = 1
};

/// Exhaustive Hasse-invariant test over F_{p^2}; p >= 5.
SupersingularData supersingular_poly(std::uint32_t p);
/// Coefficient of x^(p-1) in (x^3 + a x + b)^((p-1)/2).
Residue hasse_invariant(const Field& k, Residue a, Residue b);
bool is_supersingular_j(const Field& k, Residue j);

struct RationalityReport {
  bool phi_roots_in_fp2 = false;
  bool phi1_tilde_roots_in_fp2 = false;
  bool phi_roots_fourth_powers = false;
  std::vector<Residue> phi_roots;  // in F_{p^2}
};
RationalityReport rationality_checks(std::uint32_t p);

struct SplittingCriterion {
  bool holds = false;  // every non-exceptional root passes for both square roots
  std::vector<Residue> roots;              // non-exceptional Deuring roots in F_{p^2}
  std::vector<Residue> exceptional_roots;  // roots of (x+1)(x-2)(2x-1)(x^2-x+1)
  std::vector<bool> exceptional_pass;
};
/// For every root l of the non-exceptional part of the Deuring polynomial and
/// both m with m^2 = l, test whether m + 1 is a square in F_{p^2}.
SplittingCriterion splitting_criterion_mod8(std::uint32_t p);

struct X0Invariants {
  std::uint64_t N = 1;
  std::int64_t mu = 1;
  std::int64_t nu2 = 0;
  std::int64_t nu3 = 0;
  std::int64_t nu_inf = 0;
  Rational genus;
};
X0Invariants x0_invariants(std::uint64_t N);

struct ModularLimits {
  std::int64_t mu = 0;
  Rational genus_limit;    // mu / 12
  Rational split_bound;    // (p - 1) mu / 12
  Rational ratio;          // split_bound / genus_limit
  bool meets_dv_bound = false;  // ratio == sqrt(p^2) - 1
};
ModularLimits modular_limits(std::uint64_t ell, std::uint32_t p);

std::string to_string(const Rational& r);

}  // namespace towerlab

#endif  // TOWERLAB_MODULAR_HPP
