#ifndef TOWERLAB_RATFUNC_HPP
#define TOWERLAB_RATFUNC_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "towerlab/poly.hpp"

namespace towerlab {

/// Point of the projective line over some F_{p^j}: a value or infinity.
struct ProjPoint {
  bool inf = false;
  Residue v = 0;

  static ProjPoint infinity() { return {true, 0}; }
  static ProjPoint at(Residue x) { return {false, x}; }
  bool operator==(const ProjPoint& o) const { return inf == o.inf && (inf || v == o.v); }
  bool operator<(const ProjPoint& o) const {
    if (inf != o.inf) return !inf;
    return !inf && v < o.v;
  }
};

std::string format_point(const Field& k, const ProjPoint& x);

/// Reduced quotient num/den with den monic.  Also used as a self-map of P^1.
class RatFunc {
 public:
  explicit RatFunc(const Field& f) : num_(f), den_(Poly::constant(f, 1)) {}
  RatFunc(Poly num, Poly den);
  RatFunc(const Poly& p) : RatFunc(p, Poly::constant(p.field(), 1)) {}  // NOLINT

  static RatFunc x(const Field& f) { return RatFunc(Poly::x(f)); }
  static RatFunc constant(const Field& f, Residue c) { return RatFunc(Poly::constant(f, c)); }
  static RatFunc from_ints(const Field& f, const std::vector<std::int64_t>& num,
                           const std::vector<std::int64_t>& den);

  const Field& field() const { return num_.field(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  bool is_polynomial() const { return den_.is_constant(); }
  /// Degree as a map of P^1: max(deg num, deg den).
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator-() const { return RatFunc(-num_, den_); }
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc scale(Residue s) const { return RatFunc(num_.scale(s), den_); }
  RatFunc pow(int e) const;
  RatFunc inverse() const;
  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }

  RatFunc derivative() const;
  /// this(inner(x)); numerator and denominator are homogenized in inner.
  RatFunc compose(const RatFunc& inner) const;
  /// Same function over an extension of the prime field.
  RatFunc lift(const Field& k) const { return RatFunc(num_.lift(k), den_.lift(k)); }
  /// Value at a point over this function's own field.
  ProjPoint eval(const ProjPoint& x) const;
  /// Derivative of the defining fraction is identically zero.
  bool is_inseparable() const { return wronskian().is_zero(); }
  /// num' den - num den'; its roots are the finite critical points.
  Poly wronskian() const;

  std::string to_string(const std::string& var = "x") const;

 private:
  Poly num_, den_;
};

/// Closed point of P^1 over a prime field: infinity or a monic irreducible.
struct PlaceP1 {
  bool inf = false;
  std::optional<Poly> poly;

  static PlaceP1 infinity() { return {true, std::nullopt}; }
  static PlaceP1 finite(const Poly& p) { return {false, p.monic()}; }
  static PlaceP1 rational(const Field& f, Residue a) { return finite(Poly::linear(f, a)); }

  unsigned degree() const { return inf ? 1u : static_cast<unsigned>(poly->degree()); }
  bool operator==(const PlaceP1& o) const {
    return inf == o.inf && (inf || *poly == *o.poly);
  }
  /// Finite places by (degree, coefficients), infinity last.
  bool operator<(const PlaceP1& o) const {
    if (inf != o.inf) return !inf;
    return !inf && *poly < *o.poly;
  }
  std::string to_string(const std::string& var = "x") const;
};

/// Point of P^1 with values in F_{p^j}: the place it lies on and the field.
struct PlacePoint {
  Field field;
  ProjPoint point;
};

/// Finite formal combination of places.
class DivisorP1 {
 public:
  void add(const PlaceP1& p, long n);
  long at(const PlaceP1& p) const;
  long degree() const;
  bool is_zero() const { return m_.empty(); }
  const std::map<PlaceP1, long>& terms() const { return m_; }
  DivisorP1 operator+(const DivisorP1& o) const;
  DivisorP1 operator-(const DivisorP1& o) const;
  DivisorP1 scaled(long k) const;
  /// Multiplicities reduced into [0, m), zero terms dropped.
  DivisorP1 mod(long m) const;
  bool operator==(const DivisorP1& o) const { return m_ == o.m_; }
  std::string to_string(const std::string& var = "x") const;

 private:
  std::map<PlaceP1, long> m_;
};

int ord_at(const RatFunc& r, const PlaceP1& P);
DivisorP1 divisor_of(const RatFunc& r);

/// Smallest root of a finite place's polynomial in F_{p^deg}.
PlacePoint place_point(const PlaceP1& P);
/// Field elements of k lying on P (all deg P conjugates when deg P divides k's degree).
std::vector<ProjPoint> points_on(const PlaceP1& P, const Field& k);
/// Place of the projective point x over F_{p^j}.
PlaceP1 place_of(const Field& k, const ProjPoint& x);
/// f(P) as a place.
PlaceP1 image_place(const RatFunc& f, const PlaceP1& P);
/// Ramification index of f at P.
unsigned ramification_index(const RatFunc& f, const PlaceP1& P);

struct RamificationPoint {
  PlaceP1 place;
  PlaceP1 image;
  unsigned e = 1;
  bool wild = false;
  bool within_bound = true;  // deg place <= ext_bound
};

/// All places with e >= 2, found among the irreducible factors of the
/// Wronskian plus the place at infinity.  Throws for inseparable f.
std::vector<RamificationPoint> ramification_data(const RatFunc& f, unsigned ext_bound = 0);
/// Sum of (e - 1) deg over the ramification data.
long ramification_degree(const std::vector<RamificationPoint>& r);

struct PreimagePlace {
  PlaceP1 place;
  unsigned multiplicity = 1;  // ramification index over the target
};

/// All places Q with f(Q) = P, from the factorization of the homogenized
/// numerator of P o f.  Multiplicity times degree sums to deg f * deg P.
std::vector<PreimagePlace> preimage_places(const RatFunc& f, const PlaceP1& P);
/// Union of preimages over a set of target places (deduplicated, sorted).
std::vector<PreimagePlace> preimage_points(const RatFunc& f, const std::vector<PlaceP1>& targets);

/// The homogenized numerator of P o f: P_h(num, den) with P_h of degree deg P.
Poly compose_place(const PlaceP1& P, const RatFunc& f);

/// The linear fractional map (a x + b)/(c x + d).
RatFunc mobius(const Field& f, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

}  // namespace towerlab

#endif  // TOWERLAB_RATFUNC_HPP
