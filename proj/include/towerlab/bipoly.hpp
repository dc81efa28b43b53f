#ifndef TOWERLAB_BIPOLY_HPP
#define TOWERLAB_BIPOLY_HPP

#include <string>
#include <vector>

#include "towerlab/ratfunc.hpp"

namespace towerlab {

/// Polynomial in two variables (a, b), stored as a polynomial in b whose
/// coefficients are polynomials in a.
class BiPoly {
 public:
  struct Term {
    unsigned i;  // degree in a
    unsigned j;  // degree in b
    std::int64_t c;
  };

  explicit BiPoly(Field f) : f_(std::move(f)) {}
  BiPoly(Field f, std::vector<Poly> rows);
  static BiPoly from_terms(const Field& f, const std::vector<Term>& terms);
  static BiPoly var_a(const Field& f) { return BiPoly(f, {Poly::x(f)}); }
  static BiPoly var_b(const Field& f) { return BiPoly(f, {Poly(f), Poly::constant(f, 1)}); }
  static BiPoly constant(const Field& f, Residue c) { return BiPoly(f, {Poly::constant(f, c)}); }
  /// u(a) * v(b).
  static BiPoly outer(const Poly& u, const Poly& v);

  const Field& field() const { return f_; }
  bool is_zero() const { return rows_.empty(); }
  int deg_b() const { return static_cast<int>(rows_.size()) - 1; }
  int deg_a() const;
  const std::vector<Poly>& rows() const { return rows_; }
  Poly row(std::size_t j) const { return j < rows_.size() ? rows_[j] : Poly(f_); }
  Residue coeff(unsigned i, unsigned j) const { return row(j).coeff(i); }

  BiPoly operator+(const BiPoly& o) const;
  BiPoly operator-(const BiPoly& o) const;
  BiPoly operator-() const;
  BiPoly operator*(const BiPoly& o) const;
  BiPoly scale(Residue s) const;
  BiPoly mul_a(const Poly& u) const;  // multiply by u(a)
  BiPoly shift_b(std::size_t n) const;
  bool operator==(const BiPoly& o) const { return rows_ == o.rows_; }

  BiPoly deriv_a() const;
  BiPoly deriv_b() const;
  Residue eval(Residue a, Residue b) const;
  /// Polynomial in b after a := a0.
  Poly at_a(Residue a0) const;
  /// Polynomial in a after b := b0.
  Poly at_b(Residue b0) const;
  BiPoly lift(const Field& k) const;
  /// Exchange the roles of a and b.
  BiPoly swap_vars() const;

  /// Monic gcd in F[a] of the coefficients of the b-powers.
  Poly content_b() const;
  BiPoly primitive_part() const;
  /// Pseudo-remainder with respect to b.
  BiPoly prem(const BiPoly& d) const;
  /// Quotient in F[a, b]; throws if d does not divide exactly.
  BiPoly exact_div(const BiPoly& d) const;
  bool divides(const BiPoly& n) const;
  /// Scaled so the coefficient at the lexicographically smallest (i, j) is 1.
  BiPoly normalized() const;

  std::string to_string(const std::string& a = "a", const std::string& b = "b") const;

 private:
  void trim();
  Field f_;
  std::vector<Poly> rows_;
};

BiPoly gcd(const BiPoly& x, const BiPoly& y);
/// Squarefree part, normalized.  Throws when both partial derivatives vanish.
BiPoly squarefree_part(const BiPoly& c);

/// Fraction-free Gaussian elimination; T needs +, -, *, exact_div, is_zero.
template <typename T>
T bareiss_determinant(std::vector<std::vector<T>> m, const T& one) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  T prev = one;
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return one - one;
      std::swap(m[k], m[r]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]).exact_div(prev);
    }
    prev = m[k][k];
  }
  return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

/// Sylvester matrix of two coefficient sequences (low degree first).
template <typename T>
std::vector<std::vector<T>> sylvester(const std::vector<T>& p, const std::vector<T>& q, const T& zero) {
  const std::size_t m = p.size() - 1, n = q.size() - 1;
  std::vector<std::vector<T>> s(m + n, std::vector<T>(m + n, zero));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = p[m - i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = q[n - i];
  return s;
}

/// Resultant in b of two bivariate polynomials, a polynomial in a.
Poly resultant_b(const BiPoly& x, const BiPoly& y);

struct ImplicitCurve {
  BiPoly C;
  int map_degree = 1;       // degree of t -> (g(t), h(t)) onto its image
  bool degenerate = false;  // the image is the graph of a Moebius map
};

/// Defining polynomial C(a, b) of the closure of {(h(t), g(t))}: a is the
/// h-coordinate, b the g-coordinate.
ImplicitCurve implicitize(const RatFunc& g, const RatFunc& h);

/// Numerator of C(u(A), v(B)): sum c_ij N_u^i D_u^(da-i) N_v^j D_v^(db-j).
BiPoly substitute(const BiPoly& c, const RatFunc& u, const RatFunc& v);

struct CurvePoint {
  Field field;  // smallest F_{p^j} containing both coordinates
  Residue a;
  Residue b;
};

/// Affine points with C = C_a = C_b = 0 over F_{p^j}, j <= ext_bound, each
/// reported once over its field of definition.
std::vector<CurvePoint> singular_points(const BiPoly& c, unsigned ext_bound);

}  // namespace towerlab

#endif  // TOWERLAB_BIPOLY_HPP
