#include <gtest/gtest.h>

#include <random>

#include "towerlab/poly.hpp"

using namespace towerlab;

namespace {

Poly random_poly(const Field& f, std::mt19937_64& rng, int deg) {
  std::uniform_int_distribution<std::uint64_t> pick(0, f.order() - 1);
  std::vector<Residue> c(deg + 1);
  for (auto& x : c) x = static_cast<Residue>(pick(rng));
  if (c.back() == 0) c.back() = 1;
  return Poly(f, c);
}

// Irreducibility by trial division over all monic polynomials of degree <= n/2.
bool naive_irreducible(const Poly& f) {
  const Field& k = f.field();
  const int n = f.degree();
  if (n <= 0) return false;
  for (int d = 1; 2 * d <= n; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= k.order();
    for (std::uint64_t idx = 0; idx < count; ++idx) {
      std::vector<Residue> c(d + 1, 0);
      std::uint64_t r = idx;
      for (int i = 0; i < d; ++i, r /= k.order()) c[i] = static_cast<Residue>(r % k.order());
      c[d] = 1;
      if ((f % Poly(k, c)).is_zero()) return false;
    }
  }
  return true;
}

}  // namespace

TEST(Poly, TrimsTrailingZeros) {
  const Field f = Field::make(5);
  const Poly p = Poly::from_ints(f, {1, 2, 5, 10});
  EXPECT_EQ(p.degree(), 1);
  EXPECT_TRUE(Poly::from_ints(f, {0, 5}).is_zero());
  EXPECT_EQ(Poly(f).degree(), -1);
}

TEST(Poly, EvaluationIsAHomomorphism) {
  std::mt19937_64 rng(11);
  const Field f = Field::make(7, 2);
  for (int i = 0; i < 40; ++i) {
    const Poly a = random_poly(f, rng, 5), b = random_poly(f, rng, 3);
    for (Residue x : {0u, 1u, 8u, 30u, 48u}) {
      EXPECT_EQ((a * b).eval(x), f.mul(a.eval(x), b.eval(x)));
      EXPECT_EQ((a - b).eval(x), f.sub(a.eval(x), b.eval(x)));
      EXPECT_EQ(a.compose(b).eval(x), a.eval(b.eval(x)));
    }
  }
}

TEST(Poly, DivisionWithRemainder) {
  std::mt19937_64 rng(12);
  const Field f = Field::make(11);
  for (int i = 0; i < 200; ++i) {
    const Poly a = random_poly(f, rng, 9), d = random_poly(f, rng, 1 + i % 6);
    const auto [q, r] = a.divmod(d);
    EXPECT_EQ(q * d + r, a);
    EXPECT_LT(r.degree(), d.degree());
    EXPECT_EQ((a * d).exact_div(d), a);
  }
  EXPECT_THROW(Poly::from_ints(f, {1, 0, 1}).exact_div(Poly::from_ints(f, {1, 1})), std::domain_error);
}

TEST(Poly, BezoutIdentity) {
  std::mt19937_64 rng(13);
  const Field f = Field::make(5, 2);
  for (int i = 0; i < 60; ++i) {
    const Poly c = random_poly(f, rng, i % 3);
    const Poly a = random_poly(f, rng, 4) * c, b = random_poly(f, rng, 5) * c;
    const auto [g, s, t] = xgcd(a, b);
    EXPECT_EQ(s * a + t * b, g);
    EXPECT_TRUE(g.is_monic());
    EXPECT_EQ(g, gcd(a, b));
    EXPECT_TRUE(a.divisible_by(g) && b.divisible_by(g));
    EXPECT_TRUE(g.divisible_by(c.monic()));
  }
}

TEST(Poly, FactorizationReassemblesAndIsIrreducible) {
  std::mt19937_64 rng(14);
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
    const Field f = Field::make(p, k);
    for (int i = 0; i < 30; ++i) {
      Poly a = random_poly(f, rng, 2 + i % 7);
      if (i % 4 == 0) a = a * a;
      Poly prod = Poly::constant(f, 1);
      const auto fac = factor(a);
      for (std::size_t j = 0; j < fac.size(); ++j) {
        const auto& [q, e] = fac[j];
        EXPECT_TRUE(q.is_monic());
        EXPECT_TRUE(naive_irreducible(q)) << q.to_string();
        EXPECT_EQ(is_irreducible(q), true);
        if (j > 0) {
          EXPECT_TRUE(fac[j - 1].first < q);
        }
        prod *= q.pow(e);
      }
      EXPECT_EQ(prod, a.monic());
    }
  }
}

TEST(Poly, IrreducibilityAgreesWithTrialDivision) {
  const Field f = Field::make(3);
  for (std::uint64_t idx = 0; idx < 81; ++idx) {
    std::vector<Residue> c{static_cast<Residue>(idx % 3), static_cast<Residue>(idx / 3 % 3),
                           static_cast<Residue>(idx / 9 % 3), static_cast<Residue>(idx / 27 % 3), 1};
    const Poly q(f, c);
    EXPECT_EQ(is_irreducible(q), naive_irreducible(q)) << q.to_string();
  }
}

TEST(Poly, RootsAgreeWithExhaustiveSearch) {
  std::mt19937_64 rng(15);
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{7, 1}, {7, 2}, {5, 3}, {13, 1}}) {
    const Field f = Field::make(p, k);
    for (int i = 0; i < 40; ++i) {
      const Poly a = random_poly(f, rng, 1 + i % 9);
      EXPECT_EQ(roots(a), roots_exhaustive(a)) << a.to_string();
    }
  }
}

TEST(Poly, SquarefreeDecomposition) {
  const Field f = Field::make(5);
  const Poly x = Poly::x(f);
  const Poly a = Poly::linear(f, 1).pow(3) * Poly::linear(f, 2) * Poly::from_ints(f, {2, 0, 1}).pow(2) *
                 (x.pow(5) - x + Poly::constant(f, 1)).pow(5);
  Poly prod = Poly::constant(f, 1);
  for (const auto& [s, i] : squarefree_decomposition(a)) {
    EXPECT_TRUE(gcd(s, s.derivative()).is_one());
    prod *= s.pow(i);
  }
  EXPECT_EQ(prod, a.monic());
  EXPECT_EQ(squarefree_part(a).degree(), 1 + 1 + 2 + 5);
}

TEST(Poly, PthRootOfPthPower) {
  const Field f = Field::make(7, 2);
  std::mt19937_64 rng(16);
  for (int i = 0; i < 10; ++i) {
    const Poly a = random_poly(f, rng, 3);
    EXPECT_EQ(a.pow(7).pth_root(), a);
  }
}

TEST(Poly, RootMultiplicityAndReverse) {
  const Field f = Field::make(11);
  const Poly a = Poly::linear(f, 3).pow(4) * Poly::linear(f, 5);
  EXPECT_EQ(a.root_multiplicity(3), 4u);
  EXPECT_EQ(a.root_multiplicity(5), 1u);
  EXPECT_EQ(a.root_multiplicity(0), 0u);
  EXPECT_EQ(Poly::from_ints(f, {1, 2, 3}).reverse(), Poly::from_ints(f, {3, 2, 1}));
  EXPECT_EQ(Poly::from_ints(f, {1, 2}).reverse(3), Poly::from_ints(f, {0, 0, 2, 1}));
}

TEST(Poly, LiftKeepsPrimeFieldCoefficients) {
  const Field f = Field::make(7), k = Field::make(7, 3);
  const Poly a = Poly::from_ints(f, {1, 0, 1});
  const Poly b = a.lift(k);
  EXPECT_EQ(b.coeffs(), a.coeffs());
  EXPECT_TRUE(b.over_prime_field());
  // x^2 + 1 has no root over F_7 or F_343 but splits over F_49.
  EXPECT_TRUE(roots(a).empty());
  EXPECT_EQ(roots(a.lift(Field::make(7, 2))).size(), 2u);
  EXPECT_TRUE(roots(b).empty());
}

TEST(Poly, PowmodMatchesPow) {
  const Field f = Field::make(13);
  const Poly m = Poly::from_ints(f, {2, 1, 0, 1});
  const Poly a = Poly::from_ints(f, {1, 5, 7});
  for (std::uint64_t e : {0u, 1u, 5u, 13u, 40u}) EXPECT_EQ(a.powmod(e, m), a.pow(e) % m);
}
