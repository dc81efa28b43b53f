#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "towerlab/bipoly.hpp"

using namespace towerlab;

namespace {

RatFunc random_map(const Field& f, std::mt19937_64& rng, int dn, int dd) {
  std::uniform_int_distribution<std::uint64_t> pick(0, f.order() - 1);
  for (;;) {
    std::vector<Residue> n(dn + 1), d(dd + 1);
    for (auto& x : n) x = static_cast<Residue>(pick(rng));
    for (auto& x : d) x = static_cast<Residue>(pick(rng));
    n.back() = n.back() ? n.back() : 1;
    d.back() = 1;
    const Poly N(f, n), D(f, d);
    if (gcd(N, D).is_one() && !RatFunc(N, D).is_constant()) return RatFunc(N, D);
  }
}

BiPoly random_bipoly(const Field& f, std::mt19937_64& rng, int da, int db) {
  std::uniform_int_distribution<std::uint64_t> pick(0, f.order() - 1);
  std::vector<Poly> rows;
  for (int j = 0; j <= db; ++j) {
    std::vector<Residue> c(da + 1);
    for (auto& x : c) x = static_cast<Residue>(pick(rng));
    rows.emplace_back(f, c);
  }
  return BiPoly(f, rows);
}

// Determinant over a field by Gaussian elimination.
Residue det(const Field& f, std::vector<std::vector<Residue>> m) {
  const std::size_t n = m.size();
  Residue d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t r = c;
    while (r < n && m[r][c] == 0) ++r;
    if (r == n) return 0;
    if (r != c) {
      std::swap(m[r], m[c]);
      d = f.neg(d);
    }
    d = f.mul(d, m[c][c]);
    const Residue inv = f.inv(m[c][c]);
    for (std::size_t i = c + 1; i < n; ++i) {
      const Residue s = f.mul(m[i][c], inv);
      for (std::size_t j = c; j < n; ++j) m[i][j] = f.sub(m[i][j], f.mul(s, m[c][j]));
    }
  }
  return d;
}

Residue naive_resultant(const Poly& p, const Poly& q) {
  const Field& f = p.field();
  std::vector<Residue> pc(p.coeffs().rbegin(), p.coeffs().rend()), qc(q.coeffs().rbegin(), q.coeffs().rend());
  const std::size_t m = pc.size() - 1, n = qc.size() - 1;
  std::vector<std::vector<Residue>> s(m + n, std::vector<Residue>(m + n, 0));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t i = 0; i <= m; ++i) s[r][r + i] = pc[i];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t i = 0; i <= n; ++i) s[n + r][r + i] = qc[i];
  return det(f, s);
}

// x and y agree up to a nonzero scalar.
bool proportional(const BiPoly& x, const BiPoly& y) { return x.normalized() == y.normalized(); }

}  // namespace

TEST(BiPoly, TermsAndEvaluation) {
  const Field f = Field::make(11);
  const BiPoly c = BiPoly::from_terms(f, {{2, 0, 3}, {0, 1, -1}, {1, 2, 5}});
  EXPECT_EQ(c.deg_a(), 2);
  EXPECT_EQ(c.deg_b(), 2);
  for (Residue a = 0; a < 11; ++a)
    for (Residue b = 0; b < 11; ++b)
      EXPECT_EQ(c.eval(a, b), (3 * a * a + 10 * b + 5 * a * b * b) % 11);
  EXPECT_EQ(c.swap_vars().eval(4, 9), c.eval(9, 4));
  EXPECT_EQ(c.at_a(3).eval(7), c.eval(3, 7));
  EXPECT_EQ(c.at_b(7).eval(3), c.eval(3, 7));
}

TEST(BiPoly, RingIdentitiesAtPoints) {
  std::mt19937_64 rng(31);
  const Field f = Field::make(13);
  for (int i = 0; i < 20; ++i) {
    const BiPoly x = random_bipoly(f, rng, 3, 2), y = random_bipoly(f, rng, 2, 3);
    for (Residue a : {0u, 2u, 11u})
      for (Residue b : {1u, 5u, 12u}) {
        EXPECT_EQ((x * y).eval(a, b), f.mul(x.eval(a, b), y.eval(a, b)));
        EXPECT_EQ((x - y).eval(a, b), f.sub(x.eval(a, b), y.eval(a, b)));
      }
    EXPECT_EQ((x * y).exact_div(y), x);
    EXPECT_TRUE(y.divides(x * y));
  }
}

TEST(BiPoly, PartialDerivatives) {
  const Field f = Field::make(7);
  const BiPoly c = BiPoly::from_terms(f, {{3, 2, 1}, {1, 1, 2}});
  EXPECT_EQ(c.deriv_a(), BiPoly::from_terms(f, {{2, 2, 3}, {0, 1, 2}}));
  EXPECT_EQ(c.deriv_b(), BiPoly::from_terms(f, {{3, 1, 2}, {1, 0, 2}}));
}

TEST(BiPoly, GcdFindsCommonFactor) {
  std::mt19937_64 rng(32);
  const Field f = Field::make(11);
  for (int i = 0; i < 10; ++i) {
    const BiPoly common = random_bipoly(f, rng, 1, 1), x = random_bipoly(f, rng, 2, 1),
                 y = random_bipoly(f, rng, 1, 2);
    const BiPoly g = gcd(x * common, y * common);
    EXPECT_TRUE(g.divides(x * common));
    EXPECT_TRUE(g.divides(y * common));
    EXPECT_TRUE(common.divides(g) || common.deg_a() + common.deg_b() == 0);
  }
}

TEST(BiPoly, SquarefreePart) {
  const Field f = Field::make(7);
  const BiPoly a = BiPoly::var_a(f), b = BiPoly::var_b(f);
  const BiPoly line = a - b, conic = a * a + b * b - BiPoly::constant(f, 1);
  EXPECT_TRUE(proportional(squarefree_part(line * line * conic), line * conic));
}

TEST(Resultant, MatchesSylvesterDeterminantAtSpecializations) {
  std::mt19937_64 rng(33);
  const Field f = Field::make(17);
  for (int i = 0; i < 15; ++i) {
    const BiPoly x = random_bipoly(f, rng, 2, 3), y = random_bipoly(f, rng, 2, 2);
    const Poly r = resultant_b(x, y);
    for (Residue a0 = 0; a0 < 17; a0 += 3) {
      const Poly xs = x.at_a(a0), ys = y.at_a(a0);
      // Leading coefficients must survive the specialization.
      if (xs.degree() != x.deg_b() || ys.degree() != y.deg_b()) continue;
      EXPECT_EQ(r.eval(a0), naive_resultant(xs, ys));
    }
  }
}

TEST(Implicitize, IdentityGivesDiagonal) {
  const Field f = Field::make(7);
  const RatFunc t = RatFunc::x(f);
  const ImplicitCurve c = implicitize(t, t);
  EXPECT_TRUE(proportional(c.C, BiPoly::var_a(f) - BiPoly::var_b(f)));
  EXPECT_TRUE(c.degenerate);
  EXPECT_EQ(c.map_degree, 1);
}

TEST(Implicitize, CurveOfTheLegendreCorrespondence) {
  // a = t^2, b = 4t/(t+1)^2: 4a(b-2)^2 - (a+1)^2 b^2, singular at (-1, 2).
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    const Field f = Field::make(p);
    const RatFunc g = RatFunc::from_ints(f, {0, 4}, {1, 2, 1}), h = RatFunc::x(f).pow(2);
    const BiPoly a = BiPoly::var_a(f), b = BiPoly::var_b(f), one = BiPoly::constant(f, 1);
    const BiPoly two = BiPoly::constant(f, 2), four = BiPoly::constant(f, 4);
    const BiPoly expect = four * a * (b - two) * (b - two) - (a + one) * (a + one) * b * b;
    const ImplicitCurve c = implicitize(g, h);
    EXPECT_TRUE(proportional(c.C, expect)) << "p = " << p << ": " << c.C.to_string();
    EXPECT_EQ(c.map_degree, 1);
    const auto sing = singular_points(c.C, 2);
    const bool found = std::any_of(sing.begin(), sing.end(), [&](const CurvePoint& s) {
      return s.field.degree() == 1 && s.a == f.from_int(-1) && s.b == 2;
    });
    EXPECT_TRUE(found) << "p = " << p;
    for (const auto& s : sing) {
      EXPECT_EQ(c.C.lift(s.field).eval(s.a, s.b), 0u);
      EXPECT_EQ(c.C.deriv_a().lift(s.field).eval(s.a, s.b), 0u);
      EXPECT_EQ(c.C.deriv_b().lift(s.field).eval(s.a, s.b), 0u);
    }
  }
}

TEST(Implicitize, CurveVanishesOnTheParametrization) {
  std::mt19937_64 rng(34);
  const Field f = Field::make(11);
  for (int i = 0; i < 20; ++i) {
    const RatFunc g = random_map(f, rng, 1 + i % 3, i % 3), h = random_map(f, rng, 1 + (i / 3) % 3, (i / 2) % 3);
    const ImplicitCurve c = implicitize(g, h);
    for (Residue t = 0; t < 11; ++t) {
      const ProjPoint ga = g.eval(ProjPoint::at(t)), hb = h.eval(ProjPoint::at(t));
      if (ga.inf || hb.inf) continue;
      EXPECT_EQ(c.C.eval(hb.v, ga.v), 0u) << g.to_string() << " , " << h.to_string();
    }
    // Degrees: deg_a(C) * map_degree = deg g, deg_b(C) * map_degree = deg h.
    EXPECT_EQ(c.C.deg_a() * c.map_degree, g.degree());
    EXPECT_EQ(c.C.deg_b() * c.map_degree, h.degree());
  }
}

TEST(Implicitize, MapDegreeDetectsCommonRightFactor) {
  const Field f = Field::make(13);
  const RatFunc t = RatFunc::x(f), s = t.pow(2);
  const RatFunc g = (t + RatFunc::constant(f, 1)).compose(s), h = (t.pow(3) - t).compose(s);
  const ImplicitCurve c = implicitize(g, h);
  EXPECT_EQ(c.map_degree, 2);
  EXPECT_EQ(c.C.deg_a(), 1);
  EXPECT_EQ(c.C.deg_b(), 3);
}

TEST(Substitute, AgreesWithPointwiseComposition) {
  std::mt19937_64 rng(35);
  const Field f = Field::make(13);
  for (int i = 0; i < 10; ++i) {
    const BiPoly c = random_bipoly(f, rng, 2, 2);
    const RatFunc u = random_map(f, rng, 2, 1), v = random_map(f, rng, 1, 2);
    const BiPoly s = substitute(c, u, v);
    for (Residue x = 0; x < 13; ++x)
      for (Residue y = 0; y < 13; y += 4) {
        const ProjPoint ux = u.eval(ProjPoint::at(x)), vy = v.eval(ProjPoint::at(y));
        if (ux.inf || vy.inf) continue;
        // s = C(u, v) times den_u^deg_a den_v^deg_b.
        const Residue scale = f.mul(f.pow(u.den().eval(x), c.deg_a()), f.pow(v.den().eval(y), c.deg_b()));
        EXPECT_EQ(s.eval(x, y), f.mul(scale, c.eval(ux.v, vy.v)));
      }
  }
}
