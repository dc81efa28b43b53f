#include "towerlab/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace towerlab {

Poly::Poly(Field f, std::vector<Residue> c) : f_(std::move(f)), c_(std::move(c)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::monomial(const Field& f, Residue c, std::size_t n) {
  std::vector<Residue> v(n + 1, 0);
  v[n] = c;
  return Poly(f, std::move(v));
}

Poly Poly::from_ints(const Field& f, const std::vector<std::int64_t>& c) {
  std::vector<Residue> v;
  v.reserve(c.size());
  for (auto x : c) v.push_back(f.from_int(x));
  return Poly(f, std::move(v));
}

Poly Poly::linear(const Field& f, Residue r) { return Poly(f, {f.neg(r), 1}); }

bool Poly::over_prime_field() const {
  return std::all_of(c_.begin(), c_.end(), [&](Residue a) { return f_.in_prime_field(a); });
}

Poly Poly::operator+(const Poly& o) const {
  std::vector<Residue> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_.add(coeff(i), o.coeff(i));
  return Poly(f_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  std::vector<Residue> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_.sub(coeff(i), o.coeff(i));
  return Poly(f_, std::move(r));
}

Poly Poly::operator-() const {
  std::vector<Residue> r(c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_.neg(c_[i]);
  return Poly(f_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(f_);
  const std::size_t n = c_.size() + o.c_.size() - 1;
  if (f_.is_prime_field() && f_.characteristic() < (1u << 16)) {
    // Products fit in 32 bits, so a 64-bit accumulator never overflows here.
    std::vector<std::uint64_t> acc(n, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const std::uint64_t a = c_[i];
      if (!a) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) acc[i + j] += a * o.c_[j];
    }
    std::vector<Residue> r(n);
    const std::uint64_t p = f_.characteristic();
    for (std::size_t i = 0; i < n; ++i) r[i] = static_cast<Residue>(acc[i] % p);
    return Poly(f_, std::move(r));
  }
  std::vector<Residue> r(n, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = f_.add(r[i + j], f_.mul(c_[i], o.c_[j]));
  }
  return Poly(f_, std::move(r));
}

Poly Poly::scale(Residue s) const {
  if (s == 0) return Poly(f_);
  std::vector<Residue> r(c_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = f_.mul(c_[i], s);
  return Poly(f_, std::move(r));
}

Poly Poly::shift(std::size_t n) const {
  if (is_zero()) return *this;
  std::vector<Residue> r(n, 0);
  r.insert(r.end(), c_.begin(), c_.end());
  return Poly(f_, std::move(r));
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  if (degree() < d.degree()) return {Poly(f_), *this};
  std::vector<Residue> r = c_;
  const std::size_t dd = d.c_.size() - 1;
  std::vector<Residue> q(c_.size() - dd, 0);
  const Residue inv = f_.inv(d.lc());
  for (std::size_t i = c_.size(); i-- > dd;) {
    const Residue c = f_.mul(r[i], inv);
    q[i - dd] = c;
    if (!c) continue;
    for (std::size_t j = 0; j <= dd; ++j) r[i - dd + j] = f_.sub(r[i - dd + j], f_.mul(c, d.c_[j]));
  }
  r.resize(dd);
  return {Poly(f_, std::move(q)), Poly(f_, std::move(r))};
}

Poly Poly::exact_div(const Poly& d) const {
  auto [q, r] = divmod(d);
  if (!r.is_zero()) throw std::domain_error("inexact polynomial division");
  return q;
}

Poly Poly::monic() const {
  if (is_zero() || is_monic()) return *this;
  return scale(f_.inv(lc()));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly(f_);
  std::vector<Residue> r(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = f_.mul(c_[i], f_.from_int(static_cast<std::int64_t>(i)));
  return Poly(f_, std::move(r));
}

Poly Poly::pow(std::uint64_t e) const {
  Poly r = constant(f_, 1), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

Poly Poly::powmod(std::uint64_t e, const Poly& m) const {
  Poly r = constant(f_, 1) % m, b = *this % m;
  while (e) {
    if (e & 1) r = (r * b) % m;
    e >>= 1;
    if (e) b = (b * b) % m;
  }
  return r;
}

Residue Poly::eval(Residue x) const {
  Residue r = 0;
  for (std::size_t i = c_.size(); i-- > 0;) r = f_.add(f_.mul(r, x), c_[i]);
  return r;
}

Poly Poly::compose(const Poly& inner) const {
  Poly r(f_);
  for (std::size_t i = c_.size(); i-- > 0;) r = r * inner + constant(f_, c_[i]);
  return r;
}

Poly Poly::reverse(int n) const {
  if (n < 0) n = std::max(degree(), 0);
  if (n < degree()) throw std::invalid_argument("reverse: n below degree");
  std::vector<Residue> r(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) r[static_cast<std::size_t>(n) - i] = c_[i];
  return Poly(f_, std::move(r));
}

Poly Poly::lift(const Field& k) const {
  if (k == f_) return Poly(k, c_);
  if (k.characteristic() != f_.characteristic() || !over_prime_field())
    throw std::invalid_argument("lift: coefficients do not embed in target field");
  return Poly(k, c_);
}

unsigned Poly::root_multiplicity(Residue r) const {
  if (is_zero()) throw std::invalid_argument("root multiplicity of zero polynomial");
  unsigned m = 0;
  Poly cur = *this;
  const Poly lin = linear(f_, r);
  while (true) {
    auto [q, rem] = cur.divmod(lin);
    if (!rem.is_zero()) return m;
    cur = std::move(q);
    ++m;
  }
}

Poly Poly::pth_root() const {
  const std::uint32_t p = f_.characteristic();
  const std::uint64_t e = f_.order() / p;  // inverse Frobenius
  std::vector<Residue> r(c_.empty() ? 0 : (c_.size() - 1) / p + 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    if (i % p) throw std::invalid_argument("pth_root: not a p-th power");
    r[i / p] = f_.pow(c_[i], e);
  }
  return Poly(f_, std::move(r));
}

std::string Poly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (!c_[i]) continue;
    if (!first) os << " + ";
    first = false;
    const std::string c = f_.format(c_[i]);
    if (i == 0) {
      os << c;
      continue;
    }
    if (c_[i] != 1) os << c << "*";
    os << var;
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

bool Poly::operator<(const Poly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (std::size_t i = c_.size(); i-- > 0;)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
  const Field& f = a.field();
  Poly r0 = a, r1 = b, s0 = Poly::constant(f, 1), s1(f), t0(f), t1 = Poly::constant(f, 1);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const Residue inv = f.inv(r0.lc());
  return {r0.scale(inv), s0.scale(inv), t0.scale(inv)};
}

std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("squarefree decomposition of zero");
  std::vector<std::pair<Poly, unsigned>> out;
  const unsigned p = f.field().characteristic();
  Poly c = gcd(f, f.derivative());
  Poly w = f.monic().exact_div(c);
  unsigned i = 1;
  while (!w.is_constant()) {
    Poly y = gcd(w, c);
    Poly fac = w.exact_div(y);
    if (!fac.is_constant()) out.emplace_back(fac.monic(), i);
    w = y;
    c = c.exact_div(y);
    ++i;
  }
  if (!c.is_constant()) {
    for (auto& [s, m] : squarefree_decomposition(c.monic().pth_root())) out.emplace_back(s, m * p);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  return out;
}

Poly squarefree_part(const Poly& f) {
  Poly r = Poly::constant(f.field(), 1);
  for (auto& [s, m] : squarefree_decomposition(f)) r = r * s;
  return r;
}

namespace {

// f squarefree monic; returns (g_d, d) with g_d the product of all degree-d factors.
std::vector<std::pair<Poly, unsigned>> distinct_degree(const Poly& f) {
  std::vector<std::pair<Poly, unsigned>> out;
  const Field& k = f.field();
  const Poly x = Poly::x(k);
  Poly rest = f;
  Poly h = x % rest;
  for (unsigned d = 1; 2 * d <= static_cast<unsigned>(rest.degree()); ++d) {
    h = h.powmod(k.order(), rest);
    Poly g = gcd(rest, h - x);
    if (!g.is_constant()) {
      out.emplace_back(g, d);
      rest = rest.exact_div(g);
      h = h % rest;
    }
  }
  if (!rest.is_constant()) out.emplace_back(rest, static_cast<unsigned>(rest.degree()));
  return out;
}

// f squarefree monic, product of irreducibles of degree d.  For every w the
// F_p-trace T(w) = sum_{l < kd} w^{p^l} mod f reduces to a constant of F_p
// modulo each irreducible factor, and the constants differ between two
// factors for some w in the F_p-basis theta^j x^i of F_q[x]/(f).
void equal_degree(const Poly& f, unsigned d, std::vector<Poly>& out) {
  if (f.degree() == static_cast<int>(d)) {
    out.push_back(f);
    return;
  }
  const Field& k = f.field();
  const std::uint32_t p = k.characteristic();
  const unsigned kd = k.degree() * d;
  const Residue theta = k.is_prime_field() ? 1 : k.generator_of_basis();
  for (int i = 0; i < f.degree(); ++i) {
    Residue tj = 1;
    for (unsigned j = 0; j < k.degree(); ++j, tj = k.mul(tj, theta)) {
      Poly w = Poly::monomial(k, tj, static_cast<std::size_t>(i)) % f;
      Poly t = w;
      for (unsigned l = 1; l < kd; ++l) {
        w = w.powmod(p, f);
        t += w;
      }
      std::vector<Poly> parts;
      int covered = 0;
      for (std::uint32_t c = 0; c < p && covered < f.degree(); ++c) {
        Poly g = gcd(f, t - Poly::constant(k, c));
        if (g.is_constant()) continue;
        covered += g.degree();
        parts.push_back(std::move(g));
      }
      if (parts.size() > 1) {
        for (auto& g : parts) equal_degree(g, d, out);
        return;
      }
    }
  }
  throw std::logic_error("equal-degree splitting failed");
}

}  // namespace

std::vector<std::pair<Poly, unsigned>> factor(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("factor of zero polynomial");
  std::vector<std::pair<Poly, unsigned>> out;
  if (f.is_constant()) return out;
  for (auto& [s, m] : squarefree_decomposition(f)) {
    for (auto& [g, d] : distinct_degree(s)) {
      std::vector<Poly> irr;
      equal_degree(g, d, irr);
      for (auto& q : irr) out.emplace_back(q, m);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

std::vector<Residue> roots(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("roots of zero polynomial");
  std::vector<Residue> out;
  if (f.is_constant()) return out;
  const Field& k = f.field();
  const Poly fm = f.monic();
  const Poly x = Poly::x(k);
  Poly g = gcd(fm, x.powmod(k.order(), fm) - x);
  if (g.is_constant()) return out;
  std::vector<Poly> lin;
  equal_degree(g, 1, lin);
  for (auto& l : lin) out.push_back(k.neg(l.coeff(0)));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Residue> roots_exhaustive(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("roots of zero polynomial");
  std::vector<Residue> out;
  for (Residue a : f.field().elements())
    if (f.eval(a) == 0) out.push_back(a);
  return out;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  auto fs = factor(f);
  return fs.size() == 1 && fs[0].second == 1;
}

}  // namespace towerlab
