#include "towerlab/fixtures.hpp"

namespace towerlab {

namespace {

Field prime_field(std::uint32_t p) {
  if (p == 2 || !is_prime(p)) throw FixtureError("fixtures need an odd prime, got " + std::to_string(p));
  return Field::make(p);
}

void require_p_ge_5(std::uint32_t p, const std::string& what) {
  if (p < 5) throw FixtureError(what + " needs a characteristic prime to 6, got " + std::to_string(p));
}

RatFunc ints(const Field& f, const std::vector<std::int64_t>& num, const std::vector<std::int64_t>& den = {1}) {
  return RatFunc::from_ints(f, num, den);
}

RatFunc rational(const Field& f, std::int64_t a, std::int64_t b) {
  return RatFunc::constant(f, f.div(f.from_int(a), f.from_int(b)));
}

}  // namespace

FuchsianOperator gauss_operator(const Field& f) {
  return FuchsianOperator::from_coefficients(ints(f, {0, -1, 1}), ints(f, {-1, 2}), rational(f, 1, 4));
}

FuchsianOperator j_line_operator(const Field& f) {
  require_p_ge_5(f.characteristic(), "the j-line operator");
  const RatFunc j = RatFunc::x(f);
  const RatFunc d = j * (RatFunc::constant(f, f.from_int(1728)) - j);
  const RatFunc a1 = (RatFunc::constant(f, f.from_int(1152)) - rational(f, 7, 6) * j) / d;
  const RatFunc a2 = -rational(f, 1, 144) / d;
  return {a1, a2};
}

FuchsianOperator x0_6_operator(const Field& f) {
  return FuchsianOperator::from_coefficients(ints(f, {0, -8, 7, 1}), ints(f, {-8, 14, 3}), ints(f, {2, 1}));
}

RatFunc exaprop_cover(const Field& f) { return ints(f, {0, 0, 16}, {1, -4, 6, -4, 1}); }

RatFunc goodexa_cover(const Field& f, unsigned n) {
  const std::uint32_t p = f.characteristic();
  if (n < 2 || n % p == 0 || (n - 1) % p == 0) throw FixtureError("cover needs n >= 2 with p not dividing n(n-1)");
  // -n (n/(n-1))^(n-1)
  const Residue c = f.neg(f.mul(f.from_int(n), f.pow(f.div(f.from_int(n), f.from_int(n - 1)), n - 1)));
  std::vector<Residue> coeffs(n + 1, 0);
  coeffs[n] = c;
  coeffs[n - 1] = f.neg(c);
  return RatFunc(Poly(f, coeffs));
}

RatFunc j_of_x0_3(const Field& f) {
  return RatFunc(Poly::from_ints(f, {1, 8}).pow(3).scale(f.from_int(27)),
                 Poly::from_ints(f, {0, 1}) * Poly::from_ints(f, {1, -1}).pow(3));
}

RatFunc x0_3_of_x0_6(const Field& f) {
  return RatFunc(Poly::from_ints(f, {0, 0, -27}), Poly::from_ints(f, {-4, 1}).pow(3));
}

RatFunc sigma6(const Field& f) { return mobius(f, -8, 8, 1, 8); }
RatFunc sigma18(const Field& f) { return mobius(f, -2, 2, 1, 2); }

ModularMapCheck check_x0_2_3m_maps(std::uint32_t p) {
  const Field f = prime_field(p);
  require_p_ge_5(p, "X_0(2*3^m)");
  const RatFunc z = RatFunc::x(f), g = z.pow(3);
  ModularMapCheck out{sigma6(f).compose(g.compose(sigma18(f)))};
  out.h_matches = out.h == ints(f, {0, 4, -2, 1}, {1, 1, 1});
  out.sigma6_involution = sigma6(f).compose(sigma6(f)) == z;
  out.sigma18_involution = sigma18(f).compose(sigma18(f)) == z;
  const FuchsianOperator pulled = pullback_operator(j_line_operator(f), j_of_x0_3(f).compose(x0_3_of_x0_6(f)));
  const auto tw = find_twist(pulled, x0_6_operator(f));
  out.operator_matches = tw.has_value();
  return out;
}

std::vector<std::string> tower_fixture_names() { return {"x0-2m", "exaprop", "x0-2-3m"}; }
std::vector<std::string> operator_fixture_names() { return {"gauss", "j-line", "x0-6", "lf"}; }

namespace {

Fixture goodexa(std::uint32_t p) {
  const Field f = prime_field(p);
  const RatFunc t = RatFunc::x(f);
  const RatFunc g = ints(f, {0, 4}, {1, 2, 1}), h = t.pow(2);
  const std::vector<PlaceP1> S{PlaceP1::rational(f, 0), PlaceP1::rational(f, 1), PlaceP1::infinity()};
  TowerSpec spec{validate_correspondence(g, h, S, gauss_operator(f), RatFunc(deuring_poly(p))), 0,
                 PlaceP1::rational(f, 0), std::nullopt, Guards{}};
  return {"x0-2m", "h = t^2, g = 4t/(t+1)^2 adapted to the Gauss operator", std::move(spec), std::nullopt, ""};
}

Fixture exaprop(std::uint32_t p) {
  const Field f = prime_field(p);
  const Fixture base = goodexa(p);
  const RatFunc y = RatFunc::x(f);
  PullbackData d{exaprop_cover(f),
                 // -A + A^2 + 4AB + B^2 - AB^2
                 BiPoly::from_terms(f, {{1, 0, -1}, {2, 0, 1}, {1, 1, 4}, {0, 2, 1}, {1, 2, -1}}),
                 ints(f, {0, 1, -1}, {1, 1}), y.pow(2), ints(f, {0, 0, 4}, {1, 0, -2, 0, 1})};
  PullbackReport r = verify_pullback_correspondence(base.spec.corr, d);
  if (!r.ok()) throw CorrespondenceError(r.violations);
  TowerSpec spec{std::move(*r.pulled_back), 0, PlaceP1::infinity(), std::nullopt, Guards{}};
  return {"exaprop", "y_i^2 = -y_{i-1}(y_{i-1}-1)/(y_{i-1}+1), the pullback of x0-2m along 16s^2/(s-1)^4",
          std::move(spec), std::move(d), "x0-2m"};
}

Fixture x0_2_3m(std::uint32_t p) {
  const Field f = prime_field(p);
  require_p_ge_5(p, "X_0(2*3^m)");
  const ModularMapCheck maps = check_x0_2_3m_maps(p);
  if (!maps.h_matches || !maps.sigma6_involution || !maps.sigma18_involution)
    throw std::logic_error("Atkin-Lehner data for X_0(18) failed to verify");
  const FuchsianOperator L = x0_6_operator(f);
  const auto sols = polynomial_solutions(L, static_cast<int>(p) - 1);
  if (sols.basis.empty()) throw std::logic_error("no polynomial solution on X_0(6)");
  const std::vector<PlaceP1> S{PlaceP1::rational(f, 0), PlaceP1::rational(f, 1), PlaceP1::rational(f, f.from_int(-8)),
                               PlaceP1::infinity()};
  TowerSpec spec{validate_correspondence(RatFunc::x(f).pow(3), maps.h, S, L, RatFunc(sols.basis.front())), 0,
                 PlaceP1::rational(f, 1), 6, Guards{}};
  return {"x0-2-3m", "X_0(18) => X_0(6) via g = z^3 and h = sigma6 o g o sigma18", std::move(spec), std::nullopt,
          ""};
}

}  // namespace

Fixture tower_fixture(const std::string& name, std::uint32_t p) {
  if (name == "x0-2m") return goodexa(p);
  if (name == "exaprop") return exaprop(p);
  if (name == "x0-2-3m") return x0_2_3m(p);
  throw FixtureError("unknown tower fixture '" + name + "'");
}

FuchsianOperator operator_fixture(const std::string& name, std::uint32_t p) {
  const Field f = prime_field(p);
  if (name == "gauss") return gauss_operator(f);
  if (name == "j-line") return j_line_operator(f);
  if (name == "x0-6") {
    require_p_ge_5(p, "the X_0(6) operator");
    return x0_6_operator(f);
  }
  if (name == "lf") return pullback_operator(gauss_operator(f), exaprop_cover(f));
  throw FixtureError("unknown operator fixture '" + name + "'");
}

bool exaprop_identity_holds(std::uint32_t p) {
  const Field f = prime_field(p);
  const RatFunc y = RatFunc::x(f);
  const RatFunc phi_f = RatFunc(deuring_poly(p)).compose(exaprop_cover(f));
  const int e = 2 * static_cast<int>(p) - 2;
  const RatFunc one = RatFunc::constant(f, 1);
  const RatFunc lhs = (y.pow(2) - one).pow(e) * phi_f.compose(y.pow(2));
  const RatFunc rhs = (y.pow(2) + one).pow(e) * phi_f.compose(ints(f, {0, 1, -1}, {1, 1}));
  return lhs == rhs;
}

}  // namespace towerlab
