#ifndef TOWERLAB_POLY_HPP
#define TOWERLAB_POLY_HPP

#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "towerlab/field.hpp"

namespace towerlab {

/// Dense univariate polynomial over a Field, coefficients low degree first.
/// The coefficient vector never carries trailing zeros.
class Poly {
 public:
  explicit Poly(Field f) : f_(std::move(f)) {}
  Poly(Field f, std::vector<Residue> c);

  static Poly constant(const Field& f, Residue c) { return Poly(f, {c}); }
  static Poly x(const Field& f) { return Poly(f, {0, 1}); }
  static Poly monomial(const Field& f, Residue c, std::size_t n);
  /// Integer coefficients, reduced mod p.
  static Poly from_ints(const Field& f, const std::vector<std::int64_t>& c);
  /// Monic linear factor x - r.
  static Poly linear(const Field& f, Residue r);

  const Field& field() const { return f_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  bool is_monic() const { return !c_.empty() && c_.back() == 1; }
  Residue lc() const { return c_.empty() ? 0 : c_.back(); }
  Residue coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  const std::vector<Residue>& coeffs() const { return c_; }
  /// True when every coefficient lies in the prime field.
  bool over_prime_field() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scale(Residue s) const;
  Poly shift(std::size_t n) const;  // multiply by x^n
  Poly operator/(const Poly& o) const { return divmod(o).first; }
  Poly operator%(const Poly& o) const { return divmod(o).second; }
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  bool operator==(const Poly& o) const { return c_ == o.c_ && f_ == o.f_; }

  std::pair<Poly, Poly> divmod(const Poly& d) const;
  /// Quotient when d divides *this exactly; throws otherwise.
  Poly exact_div(const Poly& d) const;
  bool divisible_by(const Poly& d) const { return divmod(d).second.is_zero(); }

  Poly monic() const;
  Poly derivative() const;
  Poly pow(std::uint64_t e) const;
  Poly powmod(std::uint64_t e, const Poly& m) const;
  Residue eval(Residue x) const;
  /// this(inner(x)).
  Poly compose(const Poly& inner) const;
  /// x^n * this(1/x) with n = max(degree, 0) or the given n.
  Poly reverse(int n = -1) const;
  /// Same coefficients over another field of the same characteristic;
  /// coefficients must be prime-field elements unless the fields coincide.
  Poly lift(const Field& k) const;
  /// Number of times (x - r) divides this polynomial.
  unsigned root_multiplicity(Residue r) const;

  /// For f with f' = 0: the polynomial r with r^p = f.
  Poly pth_root() const;

  std::string to_string(const std::string& var = "x") const;
  /// Comparison by degree, then coefficients from the top down.
  bool operator<(const Poly& o) const;

 private:
  void trim();
  Field f_;
  std::vector<Residue> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(const Poly& a, const Poly& b);
/// Extended gcd: returns (g, s, t) with s a + t b = g monic.
std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b);

/// Squarefree factorization of the monic part: pairs (s_i, i) with s_i
/// squarefree, pairwise coprime and nonconstant.
std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& f);
Poly squarefree_part(const Poly& f);

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients).  Deterministic: equal-degree
/// splitting uses trace maps over a fixed basis, never random elements.
std::vector<std::pair<Poly, unsigned>> factor(const Poly& f);
/// Distinct roots in the coefficient field, ascending by encoding.
std::vector<Residue> roots(const Poly& f);
/// Distinct roots by exhaustive evaluation; reference implementation.
std::vector<Residue> roots_exhaustive(const Poly& f);
bool is_irreducible(const Poly& f);

}  // namespace towerlab

#endif  // TOWERLAB_POLY_HPP
