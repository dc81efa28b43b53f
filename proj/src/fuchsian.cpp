#include "towerlab/fuchsian.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace towerlab {

FuchsianOperator FuchsianOperator::from_coefficients(const RatFunc& a0, const RatFunc& a1, const RatFunc& a2) {
  if (a0.is_zero()) throw std::invalid_argument("leading coefficient of the operator is zero");
  return {a1 / a0, a2 / a0};
}

IrregularSingularity::IrregularSingularity(PlaceP1 pl, int o1, int o2)
    : std::runtime_error("irregular singularity at " + pl.to_string() + ": ord(a1) = " + std::to_string(o1) +
                         ", ord(a2) = " + std::to_string(o2)),
      place(std::move(pl)),
      ord_a1(o1),
      ord_a2(o2) {}

RatFunc apply_operator(const FuchsianOperator& L, const RatFunc& u) {
  const RatFunc du = u.derivative();
  return du.derivative() + L.a1 * du + L.a2 * u;
}

FuchsianOperator at_infinity(const FuchsianOperator& L) {
  const Field& f = L.field();
  const RatFunc inv(Poly::constant(f, 1), Poly::x(f));
  const RatFunc t = RatFunc::x(f);
  const RatFunc b1 = RatFunc::constant(f, 2) / t - L.a1.compose(inv) / t.pow(2);
  const RatFunc b2 = L.a2.compose(inv) / t.pow(4);
  return {b1, b2};
}

std::vector<PlaceP1> singular_places(const FuchsianOperator& L) {
  std::set<PlaceP1> out;
  for (const RatFunc* a : {&L.a1, &L.a2})
    for (auto& [q, m] : factor(a->den())) out.insert(PlaceP1::finite(q));
  const FuchsianOperator li = at_infinity(L);
  if (li.a1.den().coeff(0) == 0 || li.a2.den().coeff(0) == 0) out.insert(PlaceP1::infinity());
  return {out.begin(), out.end()};
}

namespace {

unsigned multiplicity(Poly a, const Poly& lin) {
  unsigned m = 0;
  while (!a.is_zero()) {
    auto [q, r] = a.divmod(lin);
    if (!r.is_zero()) break;
    a = std::move(q);
    ++m;
  }
  return m;
}

// Leading coefficient of (x - alpha)^n r(x) at alpha, zero if the pole order is below n.
Residue leading_coefficient(const RatFunc& r, const Field& k, Residue alpha, unsigned n) {
  if (r.is_zero()) return 0;
  const Poly lin = Poly::linear(k, alpha);
  const Poly den = r.den().lift(k);
  const unsigned m = multiplicity(den, lin);
  if (m < n) return 0;
  Poly rest = den;
  for (unsigned i = 0; i < m; ++i) rest = rest.exact_div(lin);
  return k.div(r.num().lift(k).eval(alpha), rest.eval(alpha));
}

SingularPointData local_finite(const FuchsianOperator& L, const PlaceP1& P, const PlaceP1& reported) {
  const int o1 = L.a1.is_zero() ? 0 : ord_at(L.a1, P);
  const int o2 = L.a2.is_zero() ? 0 : ord_at(L.a2, P);
  if (o1 < -1 || o2 < -2) throw IrregularSingularity(reported, o1, o2);
  Field k = Field::make(L.field().characteristic(), 2 * P.degree());
  const Residue alpha = roots(P.poly->lift(k)).front();
  SingularPointData d{reported, k};
  d.c1 = leading_coefficient(L.a1, k, alpha, 1);
  d.c2 = leading_coefficient(L.a2, k, alpha, 2);
  const Poly ind(k, {d.c2, k.sub(d.c1, 1), 1});
  auto rs = roots(ind);
  if (rs.size() == 1) {
    d.gamma1 = d.gamma2 = rs[0];
  } else {
    d.gamma1 = rs.at(0);
    d.gamma2 = rs.at(1);
  }
  d.regular = true;
  d.apparent = d.gamma1 == 0 && d.gamma2 == 1;
  return d;
}

}  // namespace

SingularPointData local_data(const FuchsianOperator& L, const PlaceP1& P) {
  if (P.inf) {
    const FuchsianOperator li = at_infinity(L);
    return local_finite(li, PlaceP1::rational(L.field(), 0), P);
  }
  return local_finite(L, P, P);
}

std::vector<SingularPointData> singular_points(const FuchsianOperator& L) {
  std::vector<SingularPointData> out;
  for (const auto& P : singular_places(L)) out.push_back(local_data(L, P));
  return out;
}

std::pair<Residue, Residue> local_exponents(const FuchsianOperator& L, const PlaceP1& P) {
  const auto d = local_data(L, P);
  return {d.gamma1, d.gamma2};
}

std::string rational_lift(const Field& k, Residue x) {
  if (!k.in_prime_field(x)) return "";
  const long p = k.characteristic();
  long best_c = 0, best_d = 0, best = -1;
  for (long d = 1; d <= 12; ++d) {
    if (d % p == 0) continue;
    long c = static_cast<long>(x) * d % p;
    if (c > p / 2) c -= p;
    const long score = std::labs(c) + d;
    if (best < 0 || score < best) {
      best = score;
      best_c = c;
      best_d = d;
    }
  }
  return best_d == 1 ? std::to_string(best_c) : std::to_string(best_c) + "/" + std::to_string(best_d);
}

FuchsianOperator pullback_operator(const FuchsianOperator& L, const RatFunc& f) {
  if (f.is_constant()) throw std::invalid_argument("pullback along a constant map");
  const RatFunc fp = f.derivative();
  if (fp.is_zero()) throw std::invalid_argument("pullback along an inseparable map");
  const RatFunc b1 = L.a1.compose(f) * fp - fp.derivative() / fp;
  const RatFunc b2 = L.a2.compose(f) * fp * fp;
  return {b1, b2};
}

FuchsianOperator twist_operator(const FuchsianOperator& L, const RatFunc& B) {
  return {L.a1 - B.scale(2), L.a2 - B.derivative() - B * L.a1 + B * B};
}

std::optional<RatFunc> find_twist(const FuchsianOperator& L1, const FuchsianOperator& L2) {
  const Field& f = L1.field();
  const RatFunc B = (L1.a1 - L2.a1).scale(f.inv(2));
  if (!(twist_operator(L1, B).a2 == L2.a2)) return std::nullopt;
  if (B.is_zero()) return B;
  const auto sing = singular_places(L1);
  auto singular = [&](const PlaceP1& P) { return std::find(sing.begin(), sing.end(), P) != sing.end(); };
  for (auto& [q, m] : factor(B.den()))
    if (!singular(PlaceP1::finite(q))) return std::nullopt;
  // B dx has a pole at infinity unless B vanishes there to order two.
  if (ord_at(B, PlaceP1::infinity()) < 2 && !singular(PlaceP1::infinity())) return std::nullopt;
  return B;
}

AdaptedReport check_adapted(const RatFunc& g, const RatFunc& h, const FuchsianOperator& L) {
  auto B = find_twist(pullback_operator(L, g), pullback_operator(L, h));
  return {B.has_value(), B};
}

namespace {

// Nullspace of a dense matrix over k, one vector per free column.
std::vector<std::vector<Residue>> nullspace(std::vector<std::vector<Residue>> m, std::size_t cols, const Field& k) {
  std::vector<int> pivot_of_row;
  std::vector<bool> is_pivot(cols, false);
  std::size_t row = 0;
  for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
    std::size_t r = row;
    while (r < m.size() && m[r][c] == 0) ++r;
    if (r == m.size()) continue;
    std::swap(m[r], m[row]);
    const Residue inv = k.inv(m[row][c]);
    for (auto& x : m[row]) x = k.mul(x, inv);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == row || m[i][c] == 0) continue;
      const Residue s = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = k.sub(m[i][j], k.mul(s, m[row][j]));
    }
    pivot_of_row.push_back(static_cast<int>(c));
    is_pivot[c] = true;
    ++row;
  }
  std::vector<std::vector<Residue>> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Residue> v(cols, 0);
    v[f] = 1;
    for (std::size_t r = 0; r < pivot_of_row.size(); ++r) v[static_cast<std::size_t>(pivot_of_row[r])] = k.neg(m[r][f]);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

PolynomialSolutions polynomial_solutions(const FuchsianOperator& L, int deg_bound) {
  constexpr int kGuard = 5000;
  if (deg_bound < 0 || deg_bound > kGuard) throw std::invalid_argument("degree bound outside [0, 5000]");
  const Field& k = L.field();
  const Poly d1 = L.a1.den(), d2 = L.a2.den();
  const Poly D = (d1 * d2).exact_div(gcd(d1, d2));
  const Poly P0 = D, P1 = L.a1.num() * D.exact_div(d1), P2 = L.a2.num() * D.exact_div(d2);
  const std::size_t n = static_cast<std::size_t>(deg_bound) + 1;
  const int shift = std::max({P0.degree() - 2, P1.degree() - 1, P2.degree(), 0});
  const std::size_t rows = n + static_cast<std::size_t>(shift) + 1;
  std::vector<std::vector<Residue>> m(rows, std::vector<Residue>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    const Residue ii = k.from_int(static_cast<std::int64_t>(i));
    const Residue c0 = k.mul(ii, k.from_int(static_cast<std::int64_t>(i) - 1));
    auto put = [&](const Poly& P, Residue c, std::size_t off) {
      if (!c) return;
      for (int j = 0; j <= P.degree(); ++j) {
        const std::size_t r = static_cast<std::size_t>(j) + off;
        m[r][i] = k.add(m[r][i], k.mul(c, P.coeff(static_cast<std::size_t>(j))));
      }
    };
    if (i >= 2) put(P0, c0, i - 2);
    if (i >= 1) put(P1, ii, i - 1);
    put(P2, 1, i);
  }
  auto ns = nullspace(std::move(m), n, k);
  // Reduced echelon form with pivots at the highest degree.
  std::vector<std::vector<Residue>> basis;
  for (std::size_t c = n; c-- > 0;) {
    auto it = std::find_if(ns.begin(), ns.end(), [&](const auto& v) {
      return v[c] != 0 && std::all_of(v.begin() + static_cast<long>(c) + 1, v.end(), [](Residue x) { return x == 0; });
    });
    if (it == ns.end()) continue;
    std::vector<Residue> v = *it;
    ns.erase(it);
    const Residue inv = k.inv(v[c]);
    for (auto& x : v) x = k.mul(x, inv);
    for (auto& w : ns) {
      if (!w[c]) continue;
      const Residue s = w[c];
      for (std::size_t j = 0; j < n; ++j) w[j] = k.sub(w[j], k.mul(s, v[j]));
    }
    for (auto& w : basis) {
      if (!w[c]) continue;
      const Residue s = w[c];
      for (std::size_t j = 0; j < n; ++j) w[j] = k.sub(w[j], k.mul(s, v[j]));
    }
    basis.push_back(std::move(v));
  }
  PolynomialSolutions out;
  for (auto& v : basis) out.basis.emplace_back(k, v);
  std::sort(out.basis.begin(), out.basis.end());
  const auto inf = local_data(L, PlaceP1::infinity());
  std::set<Residue> classes;
  for (Residue g : {inf.gamma1, inf.gamma2})
    if (inf.field.in_prime_field(g)) classes.insert(k.neg(g));
  out.degree_classes.assign(classes.begin(), classes.end());
  return out;
}

namespace {

void require_solution(const FuchsianOperator& L, const RatFunc& u) {
  if (u.is_zero()) throw NotASolution("zero is excluded");
  if (!apply_operator(L, u).is_zero()) throw NotASolution("not a solution: " + u.to_string());
}

Residue ord_mod_p(const RatFunc& u, const PlaceP1& P) {
  const long p = u.field().characteristic();
  const long o = ord_at(u, P);
  return static_cast<Residue>(((o % p) + p) % p);
}

}  // namespace

bool order_exponent_congruence(const FuchsianOperator& L, const RatFunc& u, const PlaceP1& P) {
  require_solution(L, u);
  const auto d = local_data(L, P);
  const Residue o = ord_mod_p(u, P);
  return o == d.gamma1 || o == d.gamma2;
}

DivisorCongruence divisor_congruence(const FuchsianOperator& L, const RatFunc& u1, const RatFunc& u2,
                                     const PlaceP1& P) {
  require_solution(L, u1);
  require_solution(L, u2);
  DivisorCongruence out;
  out.premise = ord_mod_p(u1, P) == ord_mod_p(u2, P);
  const long p = u1.field().characteristic();
  out.congruent = (divisor_of(u1) - divisor_of(u2)).mod(p).is_zero();
  return out;
}

FepropReport check_feprop(const RatFunc& g, const RatFunc& h, const FuchsianOperator& L, const RatFunc& phi,
                          const std::vector<PlaceP1>& frak_s) {
  require_solution(L, phi);
  FepropReport out;
  out.adapted = check_adapted(g, h, L).adapted;
  for (const auto& s : singular_points(L))
    if (s.gamma1 == s.gamma2) out.equal_exponents = true;
  const RatFunc u(phi);
  const long p = phi.field().characteristic();
  out.D = (divisor_of(u.compose(g)) - divisor_of(u.compose(h))).mod(p);
  out.holds = std::all_of(out.D.terms().begin(), out.D.terms().end(), [&](const auto& t) {
    return std::find(frak_s.begin(), frak_s.end(), t.first) != frak_s.end();
  });
  return out;
}

}  // namespace towerlab
