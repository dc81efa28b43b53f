#include "towerlab/bipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace towerlab {

BiPoly::BiPoly(Field f, std::vector<Poly> rows) : f_(std::move(f)), rows_(std::move(rows)) { trim(); }

void BiPoly::trim() {
  while (!rows_.empty() && rows_.back().is_zero()) rows_.pop_back();
}

BiPoly BiPoly::from_terms(const Field& f, const std::vector<Term>& terms) {
  std::vector<Poly> rows;
  for (const auto& t : terms) {
    if (rows.size() <= t.j) rows.resize(t.j + 1, Poly(f));
    rows[t.j] += Poly::monomial(f, f.from_int(t.c), t.i);
  }
  return BiPoly(f, std::move(rows));
}

BiPoly BiPoly::outer(const Poly& u, const Poly& v) {
  std::vector<Poly> rows;
  for (int j = 0; j <= v.degree(); ++j) rows.push_back(u.scale(v.coeff(j)));
  return BiPoly(u.field(), std::move(rows));
}

int BiPoly::deg_a() const {
  int d = -1;
  for (const auto& r : rows_) d = std::max(d, r.degree());
  return d;
}

BiPoly BiPoly::operator+(const BiPoly& o) const {
  std::vector<Poly> r(std::max(rows_.size(), o.rows_.size()), Poly(f_));
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = row(j) + o.row(j);
  return BiPoly(f_, std::move(r));
}

BiPoly BiPoly::operator-(const BiPoly& o) const {
  std::vector<Poly> r(std::max(rows_.size(), o.rows_.size()), Poly(f_));
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = row(j) - o.row(j);
  return BiPoly(f_, std::move(r));
}

BiPoly BiPoly::operator-() const {
  std::vector<Poly> r;
  for (const auto& x : rows_) r.push_back(-x);
  return BiPoly(f_, std::move(r));
}

BiPoly BiPoly::operator*(const BiPoly& o) const {
  if (is_zero() || o.is_zero()) return BiPoly(f_);
  std::vector<Poly> r(rows_.size() + o.rows_.size() - 1, Poly(f_));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.rows_.size(); ++j) r[i + j] += rows_[i] * o.rows_[j];
  }
  return BiPoly(f_, std::move(r));
}

BiPoly BiPoly::scale(Residue s) const {
  std::vector<Poly> r;
  for (const auto& x : rows_) r.push_back(x.scale(s));
  return BiPoly(f_, std::move(r));
}

BiPoly BiPoly::mul_a(const Poly& u) const {
  std::vector<Poly> r;
  for (const auto& x : rows_) r.push_back(x * u);
  return BiPoly(f_, std::move(r));
}

BiPoly BiPoly::shift_b(std::size_t n) const {
  if (is_zero()) return *this;
  std::vector<Poly> r(n, Poly(f_));
  r.insert(r.end(), rows_.begin(), rows_.end());
  return BiPoly(f_, std::move(r));
}

BiPoly BiPoly::deriv_a() const {
  std::vector<Poly> r;
  for (const auto& x : rows_) r.push_back(x.derivative());
  return BiPoly(f_, std::move(r));
}

BiPoly BiPoly::deriv_b() const {
  std::vector<Poly> r;
  for (std::size_t j = 1; j < rows_.size(); ++j) r.push_back(rows_[j].scale(f_.from_int(static_cast<std::int64_t>(j))));
  return BiPoly(f_, std::move(r));
}

Residue BiPoly::eval(Residue a, Residue b) const {
  Residue r = 0;
  for (std::size_t j = rows_.size(); j-- > 0;) r = f_.add(f_.mul(r, b), rows_[j].eval(a));
  return r;
}

Poly BiPoly::at_a(Residue a0) const {
  std::vector<Residue> c;
  for (const auto& x : rows_) c.push_back(x.eval(a0));
  return Poly(f_, std::move(c));
}

Poly BiPoly::at_b(Residue b0) const {
  Poly r(f_);
  for (std::size_t j = rows_.size(); j-- > 0;) r = r.scale(b0) + rows_[j];
  return r;
}

BiPoly BiPoly::lift(const Field& k) const {
  std::vector<Poly> r;
  for (const auto& x : rows_) r.push_back(x.lift(k));
  return BiPoly(k, std::move(r));
}

BiPoly BiPoly::swap_vars() const {
  const int da = deg_a();
  std::vector<Poly> r;
  for (int i = 0; i <= da; ++i) {
    std::vector<Residue> c;
    for (const auto& x : rows_) c.push_back(x.coeff(static_cast<std::size_t>(i)));
    r.emplace_back(f_, std::move(c));
  }
  return BiPoly(f_, std::move(r));
}

Poly BiPoly::content_b() const {
  Poly g(f_);
  for (const auto& x : rows_) {
    g = gcd(g, x);
    if (g.is_one()) break;
  }
  return g;
}

BiPoly BiPoly::primitive_part() const {
  if (is_zero()) return *this;
  const Poly c = content_b();
  std::vector<Poly> r;
  for (const auto& x : rows_) r.push_back(x.exact_div(c));
  return BiPoly(f_, std::move(r));
}

BiPoly BiPoly::prem(const BiPoly& d) const {
  if (d.is_zero()) throw std::domain_error("pseudo-remainder by zero");
  BiPoly r = *this;
  const Poly& ld = d.rows_.back();
  while (!r.is_zero() && r.deg_b() >= d.deg_b()) {
    const Poly lr = r.rows_.back();
    const auto shift = static_cast<std::size_t>(r.deg_b() - d.deg_b());
    r = r.mul_a(ld) - d.mul_a(lr).shift_b(shift);
  }
  return r;
}

BiPoly BiPoly::exact_div(const BiPoly& d) const {
  if (d.is_zero()) throw std::domain_error("division by zero bivariate polynomial");
  BiPoly r = *this;
  std::vector<Poly> q(std::max(deg_b() - d.deg_b() + 1, 0), Poly(f_));
  const Poly& ld = d.rows_.back();
  while (!r.is_zero()) {
    if (r.deg_b() < d.deg_b()) throw std::domain_error("inexact bivariate division");
    auto [c, rem] = r.rows_.back().divmod(ld);
    if (!rem.is_zero()) throw std::domain_error("inexact bivariate division");
    const auto shift = static_cast<std::size_t>(r.deg_b() - d.deg_b());
    q[shift] += c;
    r = r - d.mul_a(c).shift_b(shift);
  }
  return BiPoly(f_, std::move(q));
}

bool BiPoly::divides(const BiPoly& n) const {
  try {
    (void)n.exact_div(*this);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

BiPoly BiPoly::normalized() const {
  if (is_zero()) return *this;
  int best_i = -1;
  std::size_t best_j = 0;
  for (std::size_t j = 0; j < rows_.size(); ++j) {
    const auto& c = rows_[j].coeffs();
    auto it = std::find_if(c.begin(), c.end(), [](Residue x) { return x != 0; });
    if (it == c.end()) continue;
    const int i = static_cast<int>(it - c.begin());
    if (best_i < 0 || i < best_i) {
      best_i = i;
      best_j = j;
    }
  }
  return scale(f_.inv(rows_[best_j].coeff(static_cast<std::size_t>(best_i))));
}

std::string BiPoly::to_string(const std::string& a, const std::string& b) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t j = rows_.size(); j-- > 0;) {
    for (std::size_t i = rows_[j].coeffs().size(); i-- > 0;) {
      const Residue c = rows_[j].coeff(i);
      if (!c) continue;
      os << (first ? "" : " + ");
      first = false;
      std::string mono;
      if (i) mono += a + (i > 1 ? "^" + std::to_string(i) : "");
      if (j) mono += (mono.empty() ? "" : "*") + b + (j > 1 ? "^" + std::to_string(j) : "");
      if (mono.empty()) os << f_.format(c);
      else if (c == 1) os << mono;
      else os << f_.format(c) << "*" << mono;
    }
  }
  return os.str();
}

BiPoly gcd(const BiPoly& x, const BiPoly& y) {
  const Field& f = x.field();
  if (x.is_zero()) return y.is_zero() ? y : y.primitive_part().mul_a(y.content_b()).normalized();
  if (y.is_zero()) return gcd(y, x);
  const Poly cg = gcd(x.content_b(), y.content_b());
  BiPoly a = x.primitive_part(), b = y.primitive_part();
  if (a.deg_b() < b.deg_b()) std::swap(a, b);
  while (!b.is_zero()) {
    if (b.deg_b() == 0) {
      a = BiPoly::constant(f, 1);
      break;
    }
    BiPoly r = a.prem(b);
    a = std::move(b);
    b = r.is_zero() ? r : r.primitive_part();
  }
  return a.primitive_part().mul_a(cg).normalized();
}

BiPoly squarefree_part(const BiPoly& c) {
  if (c.is_zero()) throw std::invalid_argument("squarefree part of zero");
  const Poly cont = c.content_b();
  BiPoly pp = c.primitive_part();
  BiPoly d = pp.deriv_b();
  if (d.is_zero()) d = pp.deriv_a();
  if (d.is_zero() && pp.deg_b() > 0) throw std::invalid_argument("squarefree part of a p-th power");
  if (!d.is_zero()) pp = pp.exact_div(gcd(pp, d));
  const Poly sc = cont.is_constant() ? Poly::constant(c.field(), 1) : squarefree_part(cont);
  return pp.mul_a(sc).normalized();
}

Poly resultant_b(const BiPoly& x, const BiPoly& y) {
  const Field& f = x.field();
  if (x.deg_b() <= 0 || y.deg_b() <= 0) throw std::invalid_argument("resultant needs positive b-degrees");
  auto s = sylvester(x.rows(), y.rows(), Poly(f));
  return bareiss_determinant(std::move(s), Poly::constant(f, 1));
}

namespace {

// Coefficient sequence in t of num(t) - v * den(t), v being a or b.
std::vector<BiPoly> pencil(const RatFunc& r, bool in_a) {
  const Field& f = r.field();
  std::vector<BiPoly> out;
  for (int i = 0; i <= r.degree(); ++i) {
    const Residue n = r.num().coeff(i), d = f.neg(r.den().coeff(i));
    if (in_a) out.emplace_back(f, std::vector<Poly>{Poly(f, {n, d})});
    else out.emplace_back(f, std::vector<Poly>{Poly::constant(f, n), Poly::constant(f, d)});
  }
  return out;
}

}  // namespace

ImplicitCurve implicitize(const RatFunc& g, const RatFunc& h) {
  if (g.is_constant() || h.is_constant()) throw std::invalid_argument("implicitize needs nonconstant maps");
  const Field& f = g.field();
  auto s = sylvester(pencil(g, true), pencil(h, false), BiPoly(f));
  BiPoly r = bareiss_determinant(std::move(s), BiPoly::constant(f, 1));
  // r vanishes at (g(t), h(t)); the curve is stored with a on the h side.
  const BiPoly c = squarefree_part(r);
  const int db = c.deg_b();
  ImplicitCurve out{c.swap_vars().normalized()};
  out.map_degree = db > 0 ? g.degree() / db : 0;
  out.degenerate = c.deg_a() == 1 && db == 1;
  return out;
}

BiPoly substitute(const BiPoly& c, const RatFunc& u, const RatFunc& v) {
  const Field& f = c.field();
  const int da = c.deg_a(), db = c.deg_b();
  auto powers = [&](const Poly& p, int n) {
    std::vector<Poly> out{Poly::constant(f, 1)};
    for (int i = 1; i <= n; ++i) out.push_back(out.back() * p);
    return out;
  };
  const auto nu = powers(u.num(), da), du = powers(u.den(), da);
  const auto nv = powers(v.num(), db), dv = powers(v.den(), db);
  BiPoly out(f);
  for (int j = 0; j <= db; ++j) {
    const Poly& rj = c.rows()[static_cast<std::size_t>(j)];
    Poly left(f);
    for (int i = 0; i <= rj.degree(); ++i)
      if (rj.coeff(i)) left += (nu[i] * du[da - i]).scale(rj.coeff(i));
    if (left.is_zero()) continue;
    out = out + BiPoly::outer(left, nv[j] * dv[db - j]);
  }
  return out;
}

std::vector<CurvePoint> singular_points(const BiPoly& c, unsigned ext_bound) {
  const Field& base = c.field();
  const BiPoly ca = c.deriv_a(), cb = c.deriv_b();
  std::vector<CurvePoint> out;
  // Candidate a-coordinates: roots of res_b(C, C_b); exhaustive when that vanishes.
  Poly r(base);
  if (cb.deg_b() > 0) r = resultant_b(c, cb);
  else if (cb.deg_b() == 0) r = cb.row(0);
  for (unsigned j = 1; j <= ext_bound; ++j) {
    Field k = Field::make(base.characteristic(), j);
    std::vector<Residue> as;
    if (!r.is_zero()) {
      as = roots(r.lift(k));
    } else {
      for (Residue a : k.elements()) as.push_back(a);
    }
    const BiPoly ck = c.lift(k), cak = ca.lift(k), cbk = cb.lift(k);
    for (Residue a0 : as) {
      const Poly c0 = ck.at_a(a0);
      if (c0.is_zero()) continue;
      Poly g = gcd(gcd(c0, cak.at_a(a0)), cbk.at_a(a0));
      if (g.is_constant()) continue;
      for (Residue b0 : roots(g)) {
        const unsigned da = k.definition_degree(a0), db = k.definition_degree(b0);
        if (std::lcm(da, db) != j) continue;
        out.push_back({k, a0, b0});
      }
    }
  }
  return out;
}

}  // namespace towerlab
