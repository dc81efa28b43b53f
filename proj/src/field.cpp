#include "towerlab/field.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace towerlab {

namespace detail {

struct FieldData {
  std::uint32_t p = 0;
  unsigned k = 0;
  std::uint64_t q = 0;
  std::vector<Residue> modulus;    // monic, low degree first
  std::vector<std::uint64_t> ppow;  // p^i for i <= k
  bool tables = false;
  std::vector<Residue> exp;  // length 2(q-1), exp[i] = g^i
  std::vector<std::uint32_t> log;  // log[0] unused
};

}  // namespace detail

namespace {

using Coeffs = std::vector<std::uint64_t>;

void trim(Coeffs& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p) { return powmod_u64(a, p - 2, p); }

// Remainder of a modulo the nonzero polynomial m over F_p.
Coeffs poly_rem(Coeffs a, const Coeffs& m, std::uint64_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  const std::uint64_t lc_inv = inv_mod(m.back(), p);
  while (a.size() >= m.size()) {
    const std::uint64_t c = a.back() * lc_inv % p;
    const std::size_t shift = a.size() - m.size();
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
    trim(a);
  }
  return a;
}

Coeffs poly_mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Coeffs r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return poly_rem(std::move(r), m, p);
}

Coeffs poly_gcd(Coeffs a, Coeffs b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Coeffs r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool is_irreducible(const Coeffs& f, std::uint64_t p) {
  const std::size_t k = f.size() - 1;
  if (k == 1) return true;
  if (f[0] == 0) return false;
  Coeffs xp = {0, 1};  // x^{p^i} mod f
  for (std::size_t i = 1; i <= k / 2; ++i) {
    Coeffs base = xp, acc = {1};
    for (std::uint64_t e = p; e; e >>= 1) {
      if (e & 1) acc = poly_mulmod(acc, base, f, p);
      base = poly_mulmod(base, base, f, p);
    }
    xp = acc;
    Coeffs d = xp;
    d.resize(std::max<std::size_t>(d.size(), 2), 0);
    d[1] = (d[1] + p - 1) % p;
    if (poly_gcd(f, d, p).size() != 1) return false;
  }
  return true;
}

// Smallest monic irreducible of degree k, coefficients compared from c0 up.
Coeffs minimal_irreducible(std::uint64_t p, unsigned k) {
  if (k == 1) return {0, 1};
  Coeffs c(k, 0);  // c[0] most significant
  while (true) {
    Coeffs f(c.begin(), c.end());
    f.push_back(1);
    if (is_irreducible(f, p)) return f;
    int i = static_cast<int>(k) - 1;
    while (i >= 0 && ++c[i] == p) c[i--] = 0;
    if (i < 0) throw FieldError("no irreducible polynomial found");
  }
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(n);
  return out;
}

Field Field::make(std::uint32_t p, unsigned k) {
  if (p == 2) throw FieldError("characteristic 2 is not supported");
  if (!is_prime(p)) throw FieldError("characteristic " + std::to_string(p) + " is not prime");
  if (k == 0) throw FieldError("extension degree must be positive");
  auto d = std::make_shared<detail::FieldData>();
  d->p = p;
  d->k = k;
  d->ppow.assign(k + 1, 1);
  for (unsigned i = 1; i <= k; ++i) {
    d->ppow[i] = d->ppow[i - 1] * p;
    if (d->ppow[i] > kMaxOrder)
      throw FieldError("field order " + std::to_string(p) + "^" + std::to_string(k) + " exceeds 2^31");
  }
  d->q = d->ppow[k];
  Coeffs m = minimal_irreducible(p, k);
  d->modulus.assign(m.begin(), m.end());

  Field f(d);
  if (d->q <= (1u << 20) && d->q > 2) {
    const std::uint64_t n = d->q - 1;
    const auto primes = prime_factors(n);
    Residue gen = 0;
    for (Residue c = 1; c < d->q; ++c) {
      bool primitive = std::all_of(primes.begin(), primes.end(),
                                   [&](std::uint64_t r) { return f.pow(c, n / r) != 1; });
      if (primitive) {
        gen = c;
        break;
      }
    }
    d->exp.resize(2 * n);
    d->log.assign(d->q, 0);
    Residue x = 1;
    for (std::uint64_t i = 0; i < n; ++i) {
      d->exp[i] = d->exp[i + n] = x;
      d->log[x] = static_cast<std::uint32_t>(i);
      x = f.mul(x, gen);
    }
    d->tables = true;
  }
  return f;
}

std::uint32_t Field::characteristic() const { return d_->p; }
unsigned Field::degree() const { return d_->k; }
std::uint64_t Field::order() const { return d_->q; }
std::span<const Residue> Field::modulus() const { return d_->modulus; }
Residue Field::generator_of_basis() const { return d_->k > 1 ? d_->p : 0; }

Residue Field::from_int(std::int64_t v) const {
  const std::int64_t p = d_->p;
  return static_cast<Residue>(((v % p) + p) % p);
}

Residue Field::add(Residue a, Residue b) const {
  const std::uint32_t p = d_->p;
  if (d_->k == 1) {
    const Residue s = a + b;
    return s >= p ? s - p : s;
  }
  Residue r = 0;
  for (unsigned i = 0; i < d_->k; ++i) {
    Residue s = a % p + b % p;
    if (s >= p) s -= p;
    r += s * static_cast<Residue>(d_->ppow[i]);
    a /= p;
    b /= p;
  }
  return r;
}

Residue Field::neg(Residue a) const {
  const std::uint32_t p = d_->p;
  if (d_->k == 1) return a == 0 ? 0 : p - a;
  Residue r = 0;
  for (unsigned i = 0; i < d_->k; ++i) {
    const Residue c = a % p;
    r += (c == 0 ? 0 : p - c) * static_cast<Residue>(d_->ppow[i]);
    a /= p;
  }
  return r;
}

Residue Field::sub(Residue a, Residue b) const { return add(a, neg(b)); }

Residue Field::mul(Residue a, Residue b) const {
  if (a == 0 || b == 0) return 0;
  const std::uint64_t p = d_->p;
  if (d_->k == 1) return static_cast<Residue>(std::uint64_t{a} * b % p);
  if (d_->tables) return d_->exp[d_->log[a] + d_->log[b]];
  const auto ca = coordinates(a), cb = coordinates(b);
  const unsigned k = d_->k;
  Coeffs r(2 * k - 1, 0);
  for (unsigned i = 0; i < k; ++i) {
    if (!ca[i]) continue;
    for (unsigned j = 0; j < k; ++j) r[i + j] = (r[i + j] + std::uint64_t{ca[i]} * cb[j]) % p;
  }
  for (unsigned t = 2 * k - 2; t >= k; --t) {
    const std::uint64_t c = r[t];
    if (!c) continue;
    for (unsigned i = 0; i < k; ++i) r[t - k + i] = (r[t - k + i] + (p - c) * d_->modulus[i]) % p;
    r[t] = 0;
  }
  Residue out = 0;
  for (unsigned i = 0; i < k; ++i) out += static_cast<Residue>(r[i] * d_->ppow[i]);
  return out;
}

Residue Field::pow(Residue a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  if (d_->tables) {
    const std::uint64_t n = d_->q - 1;
    return d_->exp[static_cast<std::uint64_t>(d_->log[a]) * (e % n) % n];
  }
  Residue r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

Residue Field::inv(Residue a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  if (d_->tables) {
    const std::uint64_t n = d_->q - 1;
    return d_->exp[(n - d_->log[a]) % n];
  }
  return pow(a, d_->q - 2);
}

Residue Field::frobenius(Residue a) const { return d_->k == 1 ? a : pow(a, d_->p); }

bool Field::is_nth_power(Residue a, std::uint64_t n) const {
  if (n == 0) throw std::invalid_argument("n must be positive");
  if (a == 0) return true;
  const std::uint64_t m = d_->q - 1;
  return pow(a, m / std::gcd(n, m)) == 1;
}

std::optional<Residue> Field::nth_root(Residue a, std::uint64_t n) const {
  if (!is_nth_power(a, n)) return std::nullopt;
  if (a == 0) return Residue{0};
  std::vector<Residue> roots;
  if (d_->tables) {
    const std::uint64_t m = d_->q - 1;
    const std::uint64_t g = std::gcd(n, m);
    // n' y == log a / g (mod m/g), with n' = n/g invertible mod m/g.
    const std::uint64_t mg = m / g, la = d_->log[a] / g;
    std::uint64_t nn = (n / g) % mg, y0 = 0;
    if (mg > 1) {
      // Extended Euclid for the inverse of nn modulo mg.
      std::int64_t t0 = 0, t1 = 1, r0 = static_cast<std::int64_t>(mg), r1 = static_cast<std::int64_t>(nn);
      while (r1) {
        const std::int64_t qt = r0 / r1;
        std::tie(t0, t1) = std::make_pair(t1, t0 - qt * t1);
        std::tie(r0, r1) = std::make_pair(r1, r0 - qt * r1);
      }
      const std::uint64_t ninv = static_cast<std::uint64_t>((t0 % static_cast<std::int64_t>(mg) + mg) % mg);
      y0 = static_cast<std::uint64_t>((static_cast<unsigned __int128>(la % mg) * ninv) % mg);
    }
    for (std::uint64_t i = 0; i < g; ++i) roots.push_back(d_->exp[(y0 + i * mg) % m]);
  } else {
    for (Residue y : elements())
      if (pow(y, n) == a) roots.push_back(y);
  }
  return *std::min_element(roots.begin(), roots.end(),
                           [this](Residue x, Residue y) { return lex_less(x, y); });
}

bool Field::in_subfield(Residue a, unsigned j) const {
  Residue b = a;
  for (unsigned i = 0; i < j; ++i) b = frobenius(b);
  return b == a;
}

unsigned Field::definition_degree(Residue a) const {
  Residue b = frobenius(a);
  unsigned j = 1;
  while (b != a) {
    b = frobenius(b);
    ++j;
  }
  return j;
}

std::vector<Residue> Field::coordinates(Residue a) const {
  std::vector<Residue> c(d_->k);
  for (unsigned i = 0; i < d_->k; ++i) {
    c[i] = a % d_->p;
    a /= d_->p;
  }
  return c;
}

Residue Field::from_coordinates(std::span<const Residue> c) const {
  Residue v = 0;
  for (std::size_t i = 0; i < c.size() && i < d_->k; ++i)
    v += (c[i] % d_->p) * static_cast<Residue>(d_->ppow[i]);
  return v;
}

bool Field::lex_less(Residue a, Residue b) const {
  for (unsigned i = 0; i < d_->k; ++i) {
    const Residue ca = a % d_->p, cb = b % d_->p;
    if (ca != cb) return ca < cb;
    a /= d_->p;
    b /= d_->p;
  }
  return false;
}

std::string Field::format(Residue a) const {
  if (a < d_->p) return std::to_string(a);
  std::ostringstream os;
  os << '(';
  const auto c = coordinates(a);
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ')';
  return os.str();
}

}  // namespace towerlab
