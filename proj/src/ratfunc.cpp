#include "towerlab/ratfunc.hpp"

#include <sstream>
#include <stdexcept>

namespace towerlab {

std::string format_point(const Field& k, const ProjPoint& x) {
  return x.inf ? "inf" : k.format(x.v);
}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::constant(num_.field(), 1);
    return;
  }
  Poly g = gcd(num_, den_);
  if (!g.is_one()) {
    num_ = num_.exact_div(g);
    den_ = den_.exact_div(g);
  }
  if (!den_.is_monic()) {
    const Residue s = field().inv(den_.lc());
    num_ = num_.scale(s);
    den_ = den_.scale(s);
  }
}

RatFunc RatFunc::from_ints(const Field& f, const std::vector<std::int64_t>& num,
                           const std::vector<std::int64_t>& den) {
  return RatFunc(Poly::from_ints(f, num), Poly::from_ints(f, den));
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
  if (den_ == o.den_) return RatFunc(num_ - o.num_, den_);
  return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
  // Cross-cancel first to keep the intermediate degrees small.
  if (num_.is_zero() || o.num_.is_zero()) return RatFunc(field());
  Poly g1 = gcd(num_, o.den_), g2 = gcd(o.num_, den_);
  return RatFunc(num_.exact_div(g1) * o.num_.exact_div(g2), den_.exact_div(g2) * o.den_.exact_div(g1));
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  return RatFunc(num_.pow(static_cast<std::uint64_t>(e)), den_.pow(static_cast<std::uint64_t>(e)));
}

Poly RatFunc::wronskian() const { return num_.derivative() * den_ - num_ * den_.derivative(); }

RatFunc RatFunc::derivative() const { return RatFunc(wronskian(), den_ * den_); }

RatFunc RatFunc::compose(const RatFunc& inner) const {
  const Field& f = field();
  const int n = std::max(degree(), 0);
  std::vector<Poly> up{Poly::constant(f, 1)}, vp{Poly::constant(f, 1)};
  for (int i = 1; i <= n; ++i) {
    up.push_back(up.back() * inner.num());
    vp.push_back(vp.back() * inner.den());
  }
  auto homog = [&](const Poly& a) {
    Poly r(f);
    for (int i = 0; i <= a.degree(); ++i)
      if (a.coeff(i)) r += (up[i] * vp[n - i]).scale(a.coeff(i));
    return r;
  };
  return RatFunc(homog(num_), homog(den_));
}

ProjPoint RatFunc::eval(const ProjPoint& x) const {
  if (x.inf) {
    if (num_.degree() > den_.degree()) return ProjPoint::infinity();
    if (num_.degree() < den_.degree()) return ProjPoint::at(0);
    return ProjPoint::at(field().div(num_.lc(), den_.lc()));
  }
  const Residue d = den_.eval(x.v);
  if (d == 0) return ProjPoint::infinity();
  return ProjPoint::at(field().div(num_.eval(x.v), d));
}

std::string RatFunc::to_string(const std::string& var) const {
  if (den_.is_one()) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

std::string PlaceP1::to_string(const std::string& var) const {
  if (inf) return "inf";
  if (poly->degree() == 1) return poly->field().format(poly->field().neg(poly->coeff(0)));
  return "[" + poly->to_string(var) + "]";
}

void DivisorP1::add(const PlaceP1& p, long n) {
  if (n == 0) return;
  auto it = m_.find(p);
  if (it == m_.end()) {
    m_.emplace(p, n);
    return;
  }
  it->second += n;
  if (it->second == 0) m_.erase(it);
}

long DivisorP1::at(const PlaceP1& p) const {
  auto it = m_.find(p);
  return it == m_.end() ? 0 : it->second;
}

long DivisorP1::degree() const {
  long d = 0;
  for (auto& [p, n] : m_) d += n * static_cast<long>(p.degree());
  return d;
}

DivisorP1 DivisorP1::operator+(const DivisorP1& o) const {
  DivisorP1 r = *this;
  for (auto& [p, n] : o.m_) r.add(p, n);
  return r;
}

DivisorP1 DivisorP1::operator-(const DivisorP1& o) const { return *this + o.scaled(-1); }

DivisorP1 DivisorP1::scaled(long k) const {
  DivisorP1 r;
  for (auto& [p, n] : m_) r.add(p, n * k);
  return r;
}

DivisorP1 DivisorP1::mod(long m) const {
  DivisorP1 r;
  for (auto& [p, n] : m_) r.add(p, ((n % m) + m) % m);
  return r;
}

std::string DivisorP1::to_string(const std::string& var) const {
  if (m_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [p, n] : m_) {
    os << (first ? "" : " + ") << n << "*(" << p.to_string(var) << ")";
    first = false;
  }
  return os.str();
}

namespace {

unsigned poly_multiplicity(Poly a, const Poly& q) {
  unsigned m = 0;
  while (!a.is_zero()) {
    auto [quot, rem] = a.divmod(q);
    if (!rem.is_zero()) break;
    a = std::move(quot);
    ++m;
  }
  return m;
}

const Field& prime_field_of(const PlaceP1& P) {
  const Field& f = P.poly->field();
  if (!f.is_prime_field()) throw std::invalid_argument("places are supported over prime fields only");
  return f;
}

}  // namespace

int ord_at(const RatFunc& r, const PlaceP1& P) {
  if (r.is_zero()) throw std::invalid_argument("ord of the zero function");
  if (P.inf) return r.den().degree() - r.num().degree();
  const Poly q = P.poly->lift(r.field());
  return static_cast<int>(poly_multiplicity(r.num(), q)) - static_cast<int>(poly_multiplicity(r.den(), q));
}

DivisorP1 divisor_of(const RatFunc& r) {
  if (r.is_zero()) throw std::invalid_argument("divisor of the zero function");
  DivisorP1 d;
  for (auto& [q, m] : factor(r.num())) d.add(PlaceP1::finite(q), m);
  for (auto& [q, m] : factor(r.den())) d.add(PlaceP1::finite(q), -static_cast<long>(m));
  d.add(PlaceP1::infinity(), r.den().degree() - r.num().degree());
  return d;
}

PlacePoint place_point(const PlaceP1& P) {
  if (P.inf) throw std::invalid_argument("place_point: infinity has no finite root");
  const Field& base = prime_field_of(P);
  Field k = Field::make(base.characteristic(), P.degree());
  auto rs = roots(P.poly->lift(k));
  if (rs.empty()) throw std::logic_error("place polynomial has no root in its residue field");
  return {k, ProjPoint::at(rs.front())};
}

std::vector<ProjPoint> points_on(const PlaceP1& P, const Field& k) {
  if (P.inf) return {ProjPoint::infinity()};
  std::vector<ProjPoint> out;
  for (Residue r : roots(P.poly->lift(k))) out.push_back(ProjPoint::at(r));
  return out;
}

PlaceP1 place_of(const Field& k, const ProjPoint& x) {
  if (x.inf) return PlaceP1::infinity();
  Poly m = Poly::constant(k, 1);
  Residue b = x.v;
  const unsigned d = k.definition_degree(x.v);
  for (unsigned i = 0; i < d; ++i) {
    m = m * Poly::linear(k, b);
    b = k.frobenius(b);
  }
  Field fp = k.is_prime_field() ? k : Field::make(k.characteristic(), 1);
  return PlaceP1::finite(Poly(fp, m.coeffs()));
}

PlaceP1 image_place(const RatFunc& f, const PlaceP1& P) {
  if (P.inf) {
    const ProjPoint y = f.eval(ProjPoint::infinity());
    return place_of(f.field(), y);
  }
  PlacePoint pt = place_point(P);
  return place_of(pt.field, f.lift(pt.field).eval(pt.point));
}

namespace {

unsigned local_index(const RatFunc& f, const Field& k, Residue a) {
  const RatFunc fk = f.lift(k);
  const ProjPoint y = fk.eval(ProjPoint::at(a));
  const Poly lin = Poly::linear(k, a);
  if (y.inf) return poly_multiplicity(fk.den(), lin);
  return poly_multiplicity(fk.num() - fk.den().scale(y.v), lin);
}

}  // namespace

unsigned ramification_index(const RatFunc& f, const PlaceP1& P) {
  if (f.is_constant()) throw std::invalid_argument("ramification of a constant map");
  if (P.inf) {
    // Chart at infinity: x = 1/t, then the index at t = 0.
    const Field& k = f.field();
    RatFunc g = f.compose(RatFunc(Poly::constant(k, 1), Poly::x(k)));
    return local_index(g, k, 0);
  }
  PlacePoint pt = place_point(P);
  return local_index(f, pt.field, pt.point.v);
}

std::vector<RamificationPoint> ramification_data(const RatFunc& f, unsigned ext_bound) {
  if (f.is_constant()) throw std::invalid_argument("ramification of a constant map");
  const Poly w = f.wronskian();
  if (w.is_zero()) throw std::invalid_argument("inseparable map");
  const unsigned p = f.field().characteristic();
  std::vector<PlaceP1> cand;
  for (auto& [q, m] : factor(w)) cand.push_back(PlaceP1::finite(q));
  cand.push_back(PlaceP1::infinity());
  std::vector<RamificationPoint> out;
  for (auto& P : cand) {
    const unsigned e = ramification_index(f, P);
    if (e < 2) continue;
    out.push_back({P, image_place(f, P), e, e % p == 0, ext_bound == 0 || P.degree() <= ext_bound});
  }
  return out;
}

long ramification_degree(const std::vector<RamificationPoint>& r) {
  long s = 0;
  for (auto& x : r) s += static_cast<long>(x.e - 1) * x.place.degree();
  return s;
}

Poly compose_place(const PlaceP1& P, const RatFunc& f) {
  if (P.inf) return f.den();
  const Poly q = P.poly->lift(f.field());
  const int m = q.degree();
  Poly r(f.field());
  Poly up = Poly::constant(f.field(), 1);
  std::vector<Poly> vp{Poly::constant(f.field(), 1)};
  for (int i = 1; i <= m; ++i) vp.push_back(vp.back() * f.den());
  for (int i = 0; i <= m; ++i) {
    if (q.coeff(i)) r += (up * vp[m - i]).scale(q.coeff(i));
    up = up * f.num();
  }
  return r;
}

std::vector<PreimagePlace> preimage_places(const RatFunc& f, const PlaceP1& P) {
  if (f.is_constant()) throw std::invalid_argument("preimage under a constant map");
  const Poly F = compose_place(P, f);
  std::vector<PreimagePlace> out;
  for (auto& [q, m] : factor(F)) out.push_back({PlaceP1::finite(q), m});
  const long deficiency = static_cast<long>(f.degree()) * P.degree() - F.degree();
  if (deficiency > 0) out.push_back({PlaceP1::infinity(), static_cast<unsigned>(deficiency)});
  return out;
}

std::vector<PreimagePlace> preimage_points(const RatFunc& f, const std::vector<PlaceP1>& targets) {
  std::map<PlaceP1, unsigned> acc;
  for (auto& P : targets)
    for (auto& q : preimage_places(f, P)) acc.emplace(q.place, q.multiplicity);
  std::vector<PreimagePlace> out;
  for (auto& [pl, m] : acc) out.push_back({pl, m});
  return out;
}

RatFunc mobius(const Field& f, std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  return RatFunc::from_ints(f, {b, a}, {d, c});
}

}  // namespace towerlab
