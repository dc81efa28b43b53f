#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "towerlab/ratfunc.hpp"

using namespace towerlab;

namespace {

RatFunc random_ratfunc(const Field& f, std::mt19937_64& rng, int dn, int dd) {
  std::uniform_int_distribution<std::uint64_t> pick(0, f.order() - 1);
  for (;;) {
    std::vector<Residue> n(dn + 1), d(dd + 1);
    for (auto& x : n) x = static_cast<Residue>(pick(rng));
    for (auto& x : d) x = static_cast<Residue>(pick(rng));
    n.back() = n.back() ? n.back() : 1;
    d.back() = 1;
    const Poly N(f, n), D(f, d);
    if (gcd(N, D).is_one()) return RatFunc(N, D);
  }
}

// Direct value at a finite point, or infinity at a pole.
ProjPoint value(const Field& k, const Poly& num, const Poly& den, Residue x) {
  const Residue d = den.eval(x);
  if (d == 0) return ProjPoint::infinity();
  return ProjPoint::at(k.div(num.eval(x), d));
}

}  // namespace

TEST(RatFunc, ReducesAndNormalizes) {
  const Field f = Field::make(7);
  const RatFunc r(Poly::from_ints(f, {-1, 0, 1}).scale(3), Poly::from_ints(f, {1, 1}).scale(2));
  EXPECT_EQ(r.num(), Poly::from_ints(f, {-1, 1}).scale(f.div(3, 2)));
  EXPECT_TRUE(r.den().is_one());
  EXPECT_THROW(RatFunc(Poly::x(f), Poly(f)), std::domain_error);
}

TEST(RatFunc, FieldOperationsAgreeWithPointValues) {
  std::mt19937_64 rng(21);
  const Field f = Field::make(11);
  for (int i = 0; i < 50; ++i) {
    const RatFunc a = random_ratfunc(f, rng, 2, 2), b = random_ratfunc(f, rng, 1, 3);
    const RatFunc s = a + b, m = a * b, q = a / b, c = a.compose(b);
    for (Residue x = 0; x < 11; ++x) {
      const ProjPoint ax = a.eval(ProjPoint::at(x)), bx = b.eval(ProjPoint::at(x));
      if (ax.inf || bx.inf) continue;
      EXPECT_EQ(s.eval(ProjPoint::at(x)), ProjPoint::at(f.add(ax.v, bx.v)));
      EXPECT_EQ(m.eval(ProjPoint::at(x)), ProjPoint::at(f.mul(ax.v, bx.v)));
      if (bx.v != 0) {
        EXPECT_EQ(q.eval(ProjPoint::at(x)), ProjPoint::at(f.div(ax.v, bx.v)));
      }
      EXPECT_EQ(c.eval(ProjPoint::at(x)), a.eval(bx));
    }
    EXPECT_EQ((a - a).is_zero(), true);
    EXPECT_EQ(a * a.inverse(), RatFunc::constant(f, 1));
  }
}

TEST(RatFunc, EvalAtInfinityAndPoles) {
  const Field f = Field::make(7);
  const RatFunc r = RatFunc::from_ints(f, {0, 3, 2}, {1, 0, 1});
  EXPECT_EQ(r.eval(ProjPoint::infinity()), ProjPoint::at(2));
  EXPECT_EQ(RatFunc::from_ints(f, {0, 0, 1}, {1}).eval(ProjPoint::infinity()), ProjPoint::infinity());
  EXPECT_EQ(RatFunc::from_ints(f, {1}, {0, 1}).eval(ProjPoint::at(0)), ProjPoint::infinity());
  EXPECT_EQ(RatFunc::from_ints(f, {1}, {0, 1}).eval(ProjPoint::infinity()), ProjPoint::at(0));
}

TEST(RatFunc, DerivativeRules) {
  std::mt19937_64 rng(22);
  const Field f = Field::make(13);
  for (int i = 0; i < 30; ++i) {
    const RatFunc a = random_ratfunc(f, rng, 3, 2), b = random_ratfunc(f, rng, 2, 2);
    EXPECT_EQ((a * b).derivative(), a.derivative() * b + a * b.derivative());
    EXPECT_EQ(a.compose(b).derivative(), a.derivative().compose(b) * b.derivative());
  }
  EXPECT_TRUE(RatFunc::x(f).pow(13).is_inseparable());
}

TEST(Divisor, PrincipalDivisorsHaveDegreeZero) {
  std::mt19937_64 rng(23);
  for (auto [p, k] : std::vector<std::pair<std::uint32_t, unsigned>>{{5, 1}, {7, 1}, {3, 2}}) {
    const Field f = Field::make(p, k);
    for (int i = 0; i < 40; ++i) {
      const RatFunc r = random_ratfunc(f, rng, i % 5, (i / 5) % 4);
      const DivisorP1 d = divisor_of(r);
      EXPECT_EQ(d.degree(), 0) << r.to_string();
      for (const auto& [P, n] : d.terms()) EXPECT_EQ(ord_at(r, P), n);
    }
  }
}

TEST(Divisor, OrdAtRationalPointsByMultiplicity) {
  const Field f = Field::make(7);
  const RatFunc r(Poly::linear(f, 2).pow(3) * Poly::linear(f, 5), Poly::linear(f, 0).pow(2));
  EXPECT_EQ(ord_at(r, PlaceP1::rational(f, 2)), 3);
  EXPECT_EQ(ord_at(r, PlaceP1::rational(f, 5)), 1);
  EXPECT_EQ(ord_at(r, PlaceP1::rational(f, 0)), -2);
  EXPECT_EQ(ord_at(r, PlaceP1::infinity()), -2);
  EXPECT_EQ(ord_at(r, PlaceP1::finite(Poly::from_ints(f, {1, 0, 1}))), 0);
}

TEST(Divisor, ArithmeticAndReduction) {
  const Field f = Field::make(5);
  DivisorP1 a, b;
  a.add(PlaceP1::rational(f, 1), 7);
  a.add(PlaceP1::infinity(), -2);
  b.add(PlaceP1::rational(f, 1), -7);
  EXPECT_EQ((a + b).terms().size(), 1u);
  EXPECT_EQ((a - a).is_zero(), true);
  EXPECT_EQ(a.mod(5).at(PlaceP1::rational(f, 1)), 2);
  EXPECT_EQ(a.mod(5).at(PlaceP1::infinity()), 3);
  EXPECT_EQ(a.scaled(3).degree(), 15);
}

TEST(Places, PointsOnAndPlaceOfInvert) {
  const Field f = Field::make(5), k = Field::make(5, 4);
  for (Residue x : k.elements()) {
    if (x % 37 != 0) continue;
    const PlaceP1 P = place_of(k, ProjPoint::at(x));
    EXPECT_TRUE(is_irreducible(*P.poly));
    EXPECT_EQ(P.degree(), k.definition_degree(x));
    const auto pts = points_on(P, k);
    EXPECT_EQ(pts.size(), P.degree());
    EXPECT_NE(std::find(pts.begin(), pts.end(), ProjPoint::at(x)), pts.end());
  }
  EXPECT_EQ(place_of(k, ProjPoint::infinity()), PlaceP1::infinity());
  (void)f;
}

TEST(Places, PreimagesMatchExhaustiveCount) {
  std::mt19937_64 rng(24);
  const Field f = Field::make(7);
  for (int i = 0; i < 30; ++i) {
    const RatFunc r = random_ratfunc(f, rng, 1 + i % 4, i % 3);
    for (Residue y = 0; y < 7; ++y) {
      const PlaceP1 P = PlaceP1::rational(f, y);
      const auto pre = preimage_places(r, P);
      unsigned total = 0, rational = 0;
      for (const auto& q : pre) {
        total += q.multiplicity * q.place.degree();
        if (q.place.degree() == 1) ++rational;
        EXPECT_EQ(q.multiplicity, ramification_index(r, q.place));
        EXPECT_EQ(image_place(r, q.place), P);
      }
      EXPECT_EQ(total, static_cast<unsigned>(r.degree()));
      unsigned direct = 0;
      for (Residue x = 0; x < 7; ++x)
        if (value(f, r.num(), r.den(), x) == ProjPoint::at(y)) ++direct;
      if (r.eval(ProjPoint::infinity()) == ProjPoint::at(y)) ++direct;
      EXPECT_EQ(rational, direct);
    }
  }
}

TEST(Places, RiemannHurwitzForTameMaps) {
  // 2 deg f - 2 = sum (e_P - 1) deg P when every index is prime to p.
  std::mt19937_64 rng(25);
  for (std::uint32_t p : {11u, 13u, 17u}) {
    const Field f = Field::make(p);
    for (int i = 0; i < 25; ++i) {
      const RatFunc r = random_ratfunc(f, rng, 1 + i % 5, i % 4);
      if (r.degree() < 1) continue;
      const auto data = ramification_data(r);
      for (const auto& x : data) EXPECT_FALSE(x.wild);
      EXPECT_EQ(ramification_degree(data), 2L * r.degree() - 2) << r.to_string();
    }
  }
}

TEST(Places, KnownRamification) {
  const Field f = Field::make(7);
  // 4t/(t+1)^2 is branched at t = 1 over 1 and at t = -1 over infinity.
  const RatFunc g = RatFunc::from_ints(f, {0, 4}, {1, 2, 1});
  std::map<PlaceP1, std::pair<PlaceP1, unsigned>> seen;
  for (const auto& x : ramification_data(g)) seen.emplace(x.place, std::make_pair(x.image, x.e));
  ASSERT_EQ(seen.size(), 2u);
  EXPECT_EQ(seen.at(PlaceP1::rational(f, 1)), std::make_pair(PlaceP1::rational(f, 1), 2u));
  EXPECT_EQ(seen.at(PlaceP1::rational(f, 6)), std::make_pair(PlaceP1::infinity(), 2u));
  const RatFunc h = RatFunc::x(f).pow(2);
  EXPECT_EQ(ramification_index(h, PlaceP1::infinity()), 2u);
  EXPECT_EQ(ramification_index(h, PlaceP1::rational(f, 0)), 2u);
  EXPECT_EQ(ramification_index(h, PlaceP1::rational(f, 3)), 1u);
  EXPECT_THROW(ramification_data(RatFunc::x(f).pow(7)), std::invalid_argument);
}

TEST(Places, WildRamificationIsFlagged) {
  const Field f = Field::make(3);
  const RatFunc r = RatFunc::x(f).pow(4) + RatFunc::x(f);
  bool wild = false;
  for (const auto& x : ramification_data(r)) wild |= x.wild;
  EXPECT_TRUE(wild);
}

TEST(Places, ComposePlaceVanishesOnPreimages) {
  const Field f = Field::make(5);
  const RatFunc r = RatFunc::from_ints(f, {1, 0, 1}, {0, 1});
  const PlaceP1 P = PlaceP1::finite(Poly::from_ints(f, {2, 0, 1}));
  const Poly F = compose_place(P, r);
  const Field k = Field::make(5, 4);
  for (Residue x : k.elements()) {
    const ProjPoint y = r.lift(k).eval(ProjPoint::at(x));
    if (y.inf) continue;
    EXPECT_EQ(F.lift(k).eval(x) == 0, P.poly->lift(k).eval(y.v) == 0);
  }
}

TEST(Places, MobiusIsInvertible) {
  const Field f = Field::make(7);
  const RatFunc s = mobius(f, -2, 2, 1, 2);
  EXPECT_EQ(s.compose(s), RatFunc::x(f));
  EXPECT_EQ(s.degree(), 1);
}
