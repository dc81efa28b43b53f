#include "towerlab/modular.hpp"

#include <numeric>
#include <stdexcept>

namespace towerlab {

namespace {

// i! mod p for i < p.
std::vector<Residue> factorials(const Field& k, std::uint32_t n) {
  std::vector<Residue> f{1};
  for (std::uint32_t i = 1; i <= n; ++i) f.push_back(k.mul(f.back(), k.from_int(i)));
  return f;
}

void require_odd(std::uint32_t p) {
  if (p == 2 || !is_prime(p)) throw FieldError("an odd prime is required");
}

}  // namespace

Poly deuring_poly(std::uint32_t p) {
  require_odd(p);
  const Field k = Field::make(p);
  const std::uint32_t m = (p - 1) / 2;
  const auto fact = factorials(k, m);
  std::vector<Residue> c(m + 1);
  for (std::uint32_t i = 0; i <= m; ++i) {
    const Residue b = k.div(fact[m], k.mul(fact[i], fact[m - i]));
    c[i] = k.mul(b, b);
  }
  return Poly(k, std::move(c));
}

Residue hasse_invariant(const Field& k, Residue a, Residue b) {
  const std::uint32_t p = k.characteristic();
  const std::uint32_t m = (p - 1) / 2;
  const Field fp = Field::make(p);
  const auto fact = factorials(fp, m);
  // Terms x^(3i) (a x)^j b^l with i + j + l = m and 3i + j = p - 1.
  Residue s = 0;
  for (std::uint32_t i = 0; 3 * i <= p - 1; ++i) {
    const std::uint32_t j = p - 1 - 3 * i;
    if (i + j > m) continue;
    const std::uint32_t l = m - i - j;
    const Residue mult = fp.div(fact[m], fp.mul(fact[i], fp.mul(fact[j], fact[l])));
    s = k.add(s, k.mul(mult, k.mul(k.pow(a, j), k.pow(b, l))));
  }
  return s;
}

bool is_supersingular_j(const Field& k, Residue j) {
  const Residue j1728 = k.from_int(1728);
  if (j == 0) return hasse_invariant(k, 0, 1) == 0;
  if (j == j1728) return hasse_invariant(k, 1, 0) == 0;
  const Residue d = k.sub(j1728, j);
  const Residue a = k.mul(3, k.mul(j, d));
  const Residue b = k.mul(2, k.mul(j, k.mul(d, d)));
  return hasse_invariant(k, a, b) == 0;
}

SupersingularData supersingular_poly(std::uint32_t p) {
  if (p < 5 || !is_prime(p)) throw FieldError("supersingular polynomial needs a prime p >= 5");
  const Field k2 = Field::make(p, 2);
  const Field fp = Field::make(p);
  SupersingularData d{p, deuring_poly(p), Poly(fp), Poly(fp), {}};
  Poly prod = Poly::constant(k2, 1);
  for (Residue j : k2.elements()) {
    if (!is_supersingular_j(k2, j)) continue;
    d.j_values.push_back(j);
    prod = prod * Poly::linear(k2, j);
  }
  if (!prod.over_prime_field()) throw std::logic_error("supersingular polynomial not defined over F_p");
  d.phi1 = Poly(fp, prod.coeffs());
  d.alpha = p / 12;
  d.delta = p % 3 == 2 ? 1 : 0;
  d.eps = p % 4 == 3 ? 1 : 0;
  Poly rest = d.phi1;
  bool ok = true;
  const Poly jx = Poly::x(fp), j1728 = Poly::linear(fp, fp.from_int(1728));
  auto strip = [&](const Poly& lin, unsigned times) {
    for (unsigned i = 0; i < times; ++i) {
      if (!rest.divisible_by(lin)) {
        ok = false;
        return;
      }
      rest = rest.exact_div(lin);
    }
    if (rest.divisible_by(lin)) ok = false;
  };
  strip(jx, d.delta);
  strip(j1728, d.eps);
  d.phi1_tilde = rest;
  d.shape_ok = ok && rest.degree() == static_cast<int>(d.alpha);
  d.simple_zeros = gcd(rest, rest.derivative()).is_one();
  return d;
}

RationalityReport rationality_checks(std::uint32_t p) {
  const SupersingularData s = supersingular_poly(p);
  const Field k2 = Field::make(p, 2);
  RationalityReport r;
  auto split_in_fp2 = [&](const Poly& f) {
    if (f.degree() <= 0) return true;
    return roots(squarefree_part(f).lift(k2)).size() == static_cast<std::size_t>(squarefree_part(f).degree());
  };
  r.phi_roots_in_fp2 = split_in_fp2(s.phi);
  r.phi1_tilde_roots_in_fp2 = split_in_fp2(s.phi1_tilde);
  r.phi_roots = roots(s.phi.lift(k2));
  r.phi_roots_fourth_powers = true;
  for (Residue x : r.phi_roots)
    if (!k2.is_nth_power(x, 4)) r.phi_roots_fourth_powers = false;
  return r;
}

SplittingCriterion splitting_criterion_mod8(std::uint32_t p) {
  if (p < 5 || !is_prime(p)) throw FieldError("splitting criterion needs a prime p >= 5");
  const Field k2 = Field::make(p, 2);
  const Field fp = Field::make(p);
  const Poly exc = Poly::from_ints(fp, {1, 1}) * Poly::from_ints(fp, {-2, 1}) * Poly::from_ints(fp, {-1, 2}) *
                   Poly::from_ints(fp, {1, -1, 1});
  SplittingCriterion out;
  out.holds = true;
  auto passes = [&](Residue l) {
    auto mu = k2.nth_root(l, 2);
    if (!mu) return false;
    const Residue m1 = *mu, m2 = k2.neg(*mu);
    return k2.is_nth_power(k2.add(m1, 1), 2) && k2.is_nth_power(k2.add(m2, 1), 2);
  };
  for (Residue l : roots(deuring_poly(p).lift(k2))) {
    if (exc.lift(k2).eval(l) == 0) {
      out.exceptional_roots.push_back(l);
      out.exceptional_pass.push_back(passes(l));
      continue;
    }
    out.roots.push_back(l);
    if (!passes(l)) out.holds = false;
  }
  return out;
}

X0Invariants x0_invariants(std::uint64_t N) {
  if (N == 0) throw std::invalid_argument("N must be positive");
  X0Invariants x;
  x.N = N;
  const auto primes = prime_factors(N);
  std::int64_t mu = static_cast<std::int64_t>(N);
  for (auto l : primes) mu = mu / static_cast<std::int64_t>(l) * static_cast<std::int64_t>(l + 1);
  x.mu = mu;
  x.nu2 = N % 4 == 0 ? 0 : 1;
  x.nu3 = N % 9 == 0 ? 0 : 1;
  for (auto l : primes) {
    // 1 + (-4/l) and 1 + (-3/l).
    if (x.nu2) x.nu2 *= l == 2 ? 1 : (l % 4 == 1 ? 2 : 0);
    if (x.nu3) x.nu3 *= l == 3 ? 1 : (l % 3 == 1 ? 2 : 0);
  }
  auto phi = [](std::uint64_t n) {
    std::uint64_t r = n;
    for (auto l : prime_factors(n)) r = r / l * (l - 1);
    return r;
  };
  x.nu_inf = 0;
  for (std::uint64_t d = 1; d <= N; ++d)
    if (N % d == 0) x.nu_inf += static_cast<std::int64_t>(phi(std::gcd(d, N / d)));
  x.genus = Rational(1) + Rational(x.mu, 12) - Rational(x.nu2, 4) - Rational(x.nu3, 3) - Rational(x.nu_inf, 2);
  if (x.genus.denominator() != 1 || x.genus < 0) throw std::logic_error("non-integral genus for X0(" + std::to_string(N) + ")");
  return x;
}

ModularLimits modular_limits(std::uint64_t ell, std::uint32_t p) {
  if (std::gcd<std::uint64_t>(ell, p) != 1) throw std::invalid_argument("level must be prime to p");
  ModularLimits m;
  m.mu = x0_invariants(ell).mu;
  m.genus_limit = Rational(m.mu, 12);
  m.split_bound = Rational(static_cast<std::int64_t>(p) - 1) * m.genus_limit;
  m.ratio = m.split_bound / m.genus_limit;
  m.meets_dv_bound = m.ratio == Rational(static_cast<std::int64_t>(p) - 1);
  return m;
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace towerlab
