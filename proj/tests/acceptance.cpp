// Acceptance suite: one PASS/FAIL line per criterion, exact tolerances.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "towerlab/bipoly.hpp"
#include "towerlab/fixtures.hpp"
#include "towerlab/fuchsian.hpp"
#include "towerlab/modular.hpp"
#include "towerlab/tower.hpp"

using namespace towerlab;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (ok) detail << " failed:";
      ok = false;
      detail << " " << what << ";";
    }
  }
};

bool is_odd_prime(std::uint32_t n) {
  if (n < 3 || n % 2 == 0) return false;
  for (std::uint32_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

// Criterion 1: the Deuring polynomial solves the Gauss operator.
void deuring_gauss(Outcome& o) {
  unsigned n = 0;
  for (std::uint32_t p = 3; p <= 101; ++p) {
    if (!is_odd_prime(p)) continue;
    const Field f = Field::make(p);
    const Poly H = deuring_poly(p);
    const std::string at = " p=" + std::to_string(p);
    o.require(apply_operator(gauss_operator(f), RatFunc(H)).is_zero(), "L(H) != 0" + at);
    o.require(H.degree() == static_cast<int>((p - 1) / 2), "degree" + at);
    o.require((2 * H.degree() + 1) % static_cast<int>(p) == 0, "2 deg + 1 mod p" + at);
    ++n;
  }
  o.detail << " " << n << " primes";
}

// Criterion 2: exponents (0,0), (0,0), (1/2,1/2) at 0, 1, infinity.
void gauss_exponents(Outcome& o) {
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    const Field f = Field::make(p);
    const FuchsianOperator L = gauss_operator(f);
    const auto places = singular_places(L);
    const std::vector<PlaceP1> expect{PlaceP1::rational(f, 0), PlaceP1::rational(f, 1), PlaceP1::infinity()};
    const std::string at = " p=" + std::to_string(p);
    o.require(places == expect, "singular set" + at);
    if (places != expect) continue;
    const Residue half = f.inv(2);
    o.require(local_exponents(L, places[0]) == std::make_pair(Residue{0}, Residue{0}), "exponents at 0" + at);
    o.require(local_exponents(L, places[1]) == std::make_pair(Residue{0}, Residue{0}), "exponents at 1" + at);
    o.require(local_exponents(L, places[2]) == std::make_pair(half, half), "exponents at inf" + at);
  }
}

// Criterion 3: pullback along 16s^2/(s-1)^4 against the reference coefficients.
void pullback_coefficients(Outcome& o) {
  for (std::uint32_t p : {7u, 11u}) {
    const Field f = Field::make(p);
    const FuchsianOperator Lf = pullback_operator(gauss_operator(f), exaprop_cover(f));
    const Poly s = Poly::x(f), q = Poly::from_ints(f, {1, -6, 1});
    const Poly sm1 = Poly::from_ints(f, {-1, 1}), sp1 = Poly::from_ints(f, {1, 1});
    // a1 = (s^4-4s^3+20s^2+8s-1)/(s(s-1)(s+1)(s^2-6s+1))
    const RatFunc a1(Poly::from_ints(f, {-1, 8, 20, -4, 1}), s * sm1 * sp1 * q);
    // a2 = 16(s^2+1)/(s(s+1)(s-1)^2(s^2-6s+1)), reference value
    const RatFunc a2(Poly::from_ints(f, {16, 0, 16}), s * sp1 * sm1.pow(2) * q);
    const std::string at = " p=" + std::to_string(p);
    o.require(Lf.a1 == a1, "a1" + at);
    o.require(Lf.a2 == a2, "a2" + at + " (computed " + Lf.a2.to_string() + ")");
    // Which operator annihilates the pulled-back Deuring polynomial.
    const RatFunc u = RatFunc(deuring_poly(p)).compose(exaprop_cover(f));
    const bool computed_solves = apply_operator(Lf, u).is_zero();
    const bool reference_solves = apply_operator(FuchsianOperator{a1, a2}, u).is_zero();
    o.detail << " [p=" << p << ": H(f) solves computed " << (computed_solves ? "yes" : "no") << ", reference "
             << (reference_solves ? "yes" : "no") << "]";
  }
}

// Criterion 4: the functional equation of Phi o f.
void feprop_identity(Outcome& o) {
  for (std::uint32_t p : {7u, 17u, 23u}) o.require(exaprop_identity_holds(p), "identity p=" + std::to_string(p));
}

// Criterion 5: implicitization and its singular point.
void implicitization(Outcome& o) {
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    const Field f = Field::make(p);
    const RatFunc g = RatFunc::from_ints(f, {0, 4}, {1, 2, 1}), h = RatFunc::x(f).pow(2);
    const BiPoly a = BiPoly::var_a(f), b = BiPoly::var_b(f), one = BiPoly::constant(f, 1);
    const BiPoly two = BiPoly::constant(f, 2), four = BiPoly::constant(f, 4);
    const BiPoly expect = four * a * (b - two) * (b - two) - (a + one) * (a + one) * b * b;
    const ImplicitCurve c = implicitize(g, h);
    const std::string at = " p=" + std::to_string(p);
    o.require(c.C.normalized() == expect.normalized(), "curve" + at);
    bool found = false;
    for (const auto& pt : singular_points(c.C, 2))
      found |= pt.field.degree() == 1 && pt.a == f.from_int(-1) && pt.b == 2;
    o.require(found, "(-1, 2) not singular" + at);
  }
}

// Criterion 6: the optimal chain at p = 7.
void optimal_chain(Outcome& o) {
  const Fixture legendre = tower_fixture("x0-2m", 7);
  const SplittingSet ls = splitting_set(legendre.spec.corr);
  const LevelData l0 = enumerate_level(legendre.spec, 0, 2, ls);
  o.require(ls.frak_t_size == 6 && l0.frak_t_rational == 6, "#T over F_49 = " + std::to_string(l0.frak_t_rational));
  const auto opt = optimality_report(legendre.spec);
  o.require(opt.optimal && opt.q == std::optional<std::uint64_t>(49), "not optimal");
  o.require(2 * opt.nu_lower == 6 * (4 - 2), "2 nu = 6 (4 - 2)");
  const Fixture ex = tower_fixture("exaprop", 7);
  const SplittingSet s = splitting_set(ex.spec.corr);
  o.detail << " #T(goodexa)=" << ls.frak_t_size << " #T(exaprop)=" << s.frak_t_size << " split:";
  for (unsigned m = 1; m <= 4; ++m) {
    const LevelData l = enumerate_level(ex.spec, m, 2, s);
    const std::uint64_t want = s.frak_t_size << m;
    o.detail << " " << l.split_count;
    o.require(l.split_count == want, "m=" + std::to_string(m) + " split " + std::to_string(l.split_count) +
                                         " != " + std::to_string(want));
    o.require(l.fibers_full, "m=" + std::to_string(m) + " fiber not full");
  }
}

// Criterion 7: splitting criterion and quadratic splitting field for p = +-1 mod 8.
void splitting_sweep(Outcome& o) {
  unsigned n = 0;
  for (std::uint32_t p = 3; p <= 97; ++p) {
    if (!is_odd_prime(p) || (p % 8 != 1 && p % 8 != 7)) continue;
    const std::string at = " p=" + std::to_string(p);
    o.require(splitting_criterion_mod8(p).holds, "criterion" + at);
    const auto msf = minimal_splitting_field(tower_fixture("exaprop", p).spec.corr, 4);
    o.require(msf.k == std::optional<unsigned>(2), "splitting degree" + at);
    ++n;
  }
  o.detail << " " << n << " primes";
}

// Criterion 8: the X_0(2*3^m) data.
void modular_fixture(Outcome& o) {
  for (std::uint32_t p : {5u, 7u, 11u, 13u})
    o.require(check_x0_2_3m_maps(p).h_matches, "h p=" + std::to_string(p));
  o.require(x0_invariants(18).genus == Rational(0), "genus X_0(18)");
  for (std::uint64_t ell : {2u, 3u, 6u})
    for (std::uint32_t p : {5u, 7u, 11u}) {
      const auto m = modular_limits(ell, p);
      o.require(m.split_bound / m.genus_limit == Rational(p - 1),
                "ratio l=" + std::to_string(ell) + " p=" + std::to_string(p));
    }
}

// Criterion 9: pruned enumeration against exhaustive search.
void oracle_equivalence(Outcome& o) {
  unsigned n = 0;
  for (const char* name : {"exaprop", "x0-2-3m"})
    for (std::uint32_t p : {5u, 7u}) {
      const Fixture fx = tower_fixture(name, p);
      const SplittingSet s = splitting_set(fx.spec.corr);
      for (unsigned k = 1; k <= 2; ++k)
        for (unsigned m = 0; m <= 2; ++m) {
          const std::uint64_t a = enumerate_level(fx.spec, m, k, s).count, b = brute_force_count(fx.spec.corr, m, k);
          o.require(a == b, std::string(name) + " p=" + std::to_string(p) + " k=" + std::to_string(k) +
                                " m=" + std::to_string(m) + ": " + std::to_string(a) + " vs " + std::to_string(b));
          ++n;
        }
    }
  o.detail << " " << n << " levels";
}

// Criterion 10: structural invariants on every fixture and level.
void invariant_suites(Outcome& o) {
  unsigned n = 0;
  for (const auto& name : tower_fixture_names())
    for (std::uint32_t p : {5u, 7u, 11u}) {
      const Fixture fx = tower_fixture(name, p);
      const Correspondence& c = fx.spec.corr;
      const std::string at = " " + name + " p=" + std::to_string(p);
      for (const RatFunc& r : {c.g, c.h, c.twist, c.phi.compose(c.g), c.phi.compose(c.h)})
        if (!r.is_zero()) o.require(divisor_of(r).degree() == 0, "divisor degree" + at);
      const SplittingSet s = splitting_set(c);
      o.require(s.images_agree && s.h_form_agrees, "splitting set forms" + at);
      for (unsigned k = 1; k <= 2; ++k)
        for (unsigned m = 0; m <= 3; ++m) {
          const LevelData l = enumerate_level(fx.spec, m, k, s);
          const std::string lv = at + " k=" + std::to_string(k) + " m=" + std::to_string(m);
          o.require(l.s_closure, "S-closure" + lv);
          o.require(l.t_closure, "T-closure" + lv);
          o.require(l.branch_confined, "branch confinement" + lv);
          ++n;
        }
    }
  o.detail << " " << n << " levels";
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"deuring-gauss", deuring_gauss},          {"gauss-exponents", gauss_exponents},
      {"pullback-coefficients", pullback_coefficients}, {"feprop-identity", feprop_identity},
      {"implicitization", implicitization},      {"optimal-chain", optimal_chain},
      {"splitting-sweep", splitting_sweep},      {"modular-fixture", modular_fixture},
      {"oracle-equivalence", oracle_equivalence}, {"invariant-suites", invariant_suites}};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " exception: " << e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %2zu %-22s %.2fs%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.str().c_str());
    if (!o.ok) ++failed;
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
