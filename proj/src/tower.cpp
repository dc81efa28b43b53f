#include "towerlab/tower.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <thread>

namespace towerlab {

std::string to_string(Violation v) {
  switch (v) {
    case Violation::kFieldMismatch: return "field-mismatch";
    case Violation::kDegreeMismatch: return "degree-mismatch";
    case Violation::kInseparable: return "inseparable";
    case Violation::kWildRamification: return "wild-ramification";
    case Violation::kSingularPreimage: return "singular-preimage";
    case Violation::kSingularSet: return "singular-set";
    case Violation::kBranchOutsideS: return "branch-outside-S";
    case Violation::kNotSolution: return "not-a-solution";
    case Violation::kNotAdapted: return "not-adapted";
    case Violation::kNotDisjoint: return "not-disjoint";
    case Violation::kComponentNotFactor: return "component-not-factor";
    case Violation::kComponentNotVanishing: return "component-not-vanishing";
    case Violation::kDiagramNotCommuting: return "diagram-not-commuting";
  }
  return "unknown";
}

namespace {

std::string join_violations(const std::vector<ViolationRecord>& v) {
  std::string s = "invalid correspondence:";
  for (const auto& r : v) s += " [" + to_string(r.kind) + ": " + r.detail + "]";
  return s;
}

std::vector<PlaceP1> places_of(const std::vector<PreimagePlace>& pre) {
  std::vector<PlaceP1> out;
  for (const auto& q : pre) out.push_back(q.place);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool contains(const std::vector<PlaceP1>& sorted, const PlaceP1& P) {
  return std::binary_search(sorted.begin(), sorted.end(), P);
}

std::string place_list(const std::vector<PlaceP1>& v) {
  std::string s;
  for (const auto& P : v) s += (s.empty() ? "" : ", ") + P.to_string();
  return "{" + s + "}";
}

std::uint64_t geometric_size(const std::vector<PlaceP1>& v) {
  std::uint64_t n = 0;
  for (const auto& P : v) n += P.degree();
  return n;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

// Index of a projective point over a field of order q.
std::uint32_t index_of(const ProjPoint& x, std::uint64_t q) {
  return x.inf ? static_cast<std::uint32_t>(q) : x.v;
}

ProjPoint point_at(std::uint32_t i, std::uint64_t q) {
  return i == q ? ProjPoint::infinity() : ProjPoint::at(i);
}

// 2x2 matrices acting on P^1 by (a x + b)/(c x + d).
struct Mat2 {
  Residue a, b, c, d;
};

Mat2 mul(const Field& k, const Mat2& x, const Mat2& y) {
  return {k.add(k.mul(x.a, y.a), k.mul(x.b, y.c)), k.add(k.mul(x.a, y.b), k.mul(x.b, y.d)),
          k.add(k.mul(x.c, y.a), k.mul(x.d, y.c)), k.add(k.mul(x.c, y.b), k.mul(x.d, y.d))};
}

Residue det(const Field& k, const Mat2& m) { return k.sub(k.mul(m.a, m.d), k.mul(m.b, m.c)); }

std::pair<Residue, Residue> homog(const ProjPoint& z) {
  return z.inf ? std::pair<Residue, Residue>{1, 0} : std::pair<Residue, Residue>{z.v, 1};
}

// The map sending 0, inf, 1 to z1, z2, z3; nullopt for repeated points.
std::optional<Mat2> frame(const Field& k, const ProjPoint& z1, const ProjPoint& z2, const ProjPoint& z3) {
  const auto [u1, w1] = homog(z1);
  const auto [u2, w2] = homog(z2);
  const auto [u3, w3] = homog(z3);
  // l * v2 + m * v1 = v3
  const Residue dd = k.sub(k.mul(u2, w1), k.mul(u1, w2));
  if (dd == 0) return std::nullopt;
  const Residue l = k.div(k.sub(k.mul(u3, w1), k.mul(u1, w3)), dd);
  const Residue m = k.div(k.sub(k.mul(u2, w3), k.mul(u3, w2)), dd);
  if (l == 0 || m == 0) return std::nullopt;
  return Mat2{k.mul(l, u2), k.mul(m, u1), k.mul(l, w2), k.mul(m, w1)};
}

RatFunc as_ratfunc(const Field& k, const Mat2& m) {
  return RatFunc(Poly(k, {m.b, m.a}), Poly(k, {m.d, m.c}));
}

// Values of r on every point of P^1(K), by index.
std::vector<std::uint32_t> value_table(const RatFunc& r, const Field& K) {
  const RatFunc rk = r.lift(K);
  const std::uint64_t q = K.order();
  std::vector<std::uint32_t> out(q + 1);
  for (std::uint64_t i = 0; i <= q; ++i)
    out[i] = index_of(rk.eval(point_at(static_cast<std::uint32_t>(i), q)), q);
  return out;
}

// Number of distinct points of P^1 over the algebraic closure with r = w.
unsigned geometric_fiber(const RatFunc& rk, const ProjPoint& w) {
  Poly n = w.inf ? rk.den() : rk.num() - rk.den().scale(w.v);
  unsigned count = 0;
  if (n.degree() > 0) count += n.degree() - gcd(n, n.derivative()).degree();
  if (rk.eval(ProjPoint::infinity()) == w) ++count;
  return count;
}

}  // namespace

CorrespondenceError::CorrespondenceError(std::vector<ViolationRecord> v)
    : std::invalid_argument(join_violations(v)), violations(std::move(v)) {}

std::uint64_t Correspondence::frak_s_size() const { return geometric_size(frak_s); }

DisjointnessReport disjointness_search(const RatFunc& g, const RatFunc& h, unsigned max_ext) {
  DisjointnessReport out;
  const unsigned delta = static_cast<unsigned>(g.degree());
  if (delta <= 1 || h.degree() != g.degree()) {
    out.searched = true;
    return out;
  }
  const std::uint32_t p = g.field().characteristic();
  for (unsigned j = 1; j <= max_ext; ++j) {
    const Field K = Field::make(p, j);
    if (K.order() > (1u << 20)) break;
    out.ext_searched = j;
    const std::uint64_t q = K.order();
    const auto gv = value_table(g, K), hv = value_table(h, K);
    std::vector<std::vector<std::uint32_t>> ginv(q + 1);
    for (std::uint32_t i = 0; i <= q; ++i) ginv[gv[i]].push_back(i);
    // Three points whose g-fibre over h(a) is rational and unramified.
    const RatFunc gk = g.lift(K);
    std::vector<std::uint32_t> anchors;
    for (std::uint32_t i = 0; i <= q && anchors.size() < 3; ++i) {
      const auto& fib = ginv[hv[i]];
      if (fib.size() == delta && geometric_fiber(gk, point_at(hv[i], q)) == delta) anchors.push_back(i);
    }
    if (anchors.size() < 3) continue;
    out.searched = true;
    const auto src = frame(K, point_at(anchors[0], q), point_at(anchors[1], q), point_at(anchors[2], q));
    if (!src) continue;
    const Mat2 inv{src->d, K.neg(src->b), K.neg(src->c), src->a};
    const RatFunc hk = h.lift(K);
    for (auto b1 : ginv[hv[anchors[0]]])
      for (auto b2 : ginv[hv[anchors[1]]])
        for (auto b3 : ginv[hv[anchors[2]]]) {
          const auto dst = frame(K, point_at(b1, q), point_at(b2, q), point_at(b3, q));
          if (!dst) continue;
          const Mat2 s = mul(K, *dst, inv);
          if (det(K, s) == 0) continue;
          const RatFunc sigma = as_ratfunc(K, s);
          if (gk.compose(sigma) == hk) {
            out.disjoint = false;
            out.mobius = sigma;
            return out;
          }
        }
    return out;
  }
  return out;
}

ValidationResult check_correspondence(const RatFunc& g, const RatFunc& h, const std::vector<PlaceP1>& S,
                                      const FuchsianOperator& op, const RatFunc& phi) {
  ValidationResult res;
  auto& v = res.violations;
  const Field& f = g.field();
  if (!(h.field() == f) || !(op.field() == f) || !(op.a2.field() == f) || !(phi.field() == f) ||
      !f.is_prime_field()) {
    v.push_back({Violation::kFieldMismatch, "g, h, operator and solution must share one prime field"});
    return res;
  }
  if (g.is_constant() || h.is_constant()) {
    v.push_back({Violation::kDegreeMismatch, "constant map"});
    return res;
  }
  if (g.degree() != h.degree())
    v.push_back({Violation::kDegreeMismatch,
                 "deg g = " + std::to_string(g.degree()) + ", deg h = " + std::to_string(h.degree())});
  const bool g_sep = !g.is_inseparable(), h_sep = !h.is_inseparable();
  if (!g_sep || !h_sep) {
    v.push_back({Violation::kInseparable, !g_sep ? "g" : "h"});
    return res;
  }

  std::vector<PlaceP1> sorted_s = S;
  std::sort(sorted_s.begin(), sorted_s.end());
  sorted_s.erase(std::unique(sorted_s.begin(), sorted_s.end()), sorted_s.end());
  const auto frak_g = places_of(preimage_points(g, sorted_s));
  const auto frak_h = places_of(preimage_points(h, sorted_s));
  if (frak_g != frak_h)
    v.push_back({Violation::kSingularPreimage, "g^-1(S) = " + place_list(frak_g) + ", h^-1(S) = " + place_list(frak_h)});

  for (const auto& [name, map] : {std::pair<const char*, const RatFunc*>{"g", &g}, {"h", &h}}) {
    for (const auto& r : ramification_data(*map)) {
      if (r.wild)
        v.push_back({Violation::kWildRamification,
                     std::string(name) + " at " + r.place.to_string() + " with e = " + std::to_string(r.e)});
      if (!contains(frak_g, r.place) && !contains(frak_h, r.place))
        v.push_back({Violation::kBranchOutsideS, std::string(name) + " ramified at " + r.place.to_string()});
    }
  }

  for (const auto& P : singular_places(op))
    if (!contains(sorted_s, P)) v.push_back({Violation::kSingularSet, "operator singular at " + P.to_string()});

  if (!apply_operator(op, phi).is_zero())
    v.push_back({Violation::kNotSolution, "operator does not annihilate " + phi.to_string()});

  const AdaptedReport adapted = check_adapted(g, h, op);
  if (!adapted.adapted) v.push_back({Violation::kNotAdapted, "no twist relates the two pullbacks"});

  const DisjointnessReport dj = disjointness_search(g, h);
  if (!dj.disjoint)
    v.push_back({Violation::kNotDisjoint, "h = g o " + dj.mobius->to_string() + " over F_" +
                                              std::to_string(dj.mobius->field().order())});

  if (!v.empty()) return res;
  Correspondence c{g, h, sorted_s, op, phi, static_cast<unsigned>(g.degree()), frak_g, *adapted.twist,
                   dj.searched};
  res.value = std::move(c);
  return res;
}

Correspondence validate_correspondence(const RatFunc& g, const RatFunc& h, const std::vector<PlaceP1>& S,
                                       const FuchsianOperator& op, const RatFunc& phi) {
  auto r = check_correspondence(g, h, S, op, phi);
  if (!r.value) throw CorrespondenceError(std::move(r.violations));
  return std::move(*r.value);
}

std::optional<WitnessOrbit> totally_branched_witness(const Correspondence& c, unsigned depth,
                                                     const std::optional<PlaceP1>& preferred) {
  const Field& f = c.field();
  if (c.delta <= 1) return WitnessOrbit{preferred.value_or(PlaceP1::rational(f, 0)), {}, true};

  std::vector<PlaceP1> total;  // places where h is totally ramified
  for (const auto& r : ramification_data(c.h))
    if (r.e == c.delta) total.push_back(r.place);
  if (total.empty()) return std::nullopt;

  std::vector<PlaceP1> total_images;
  for (const auto& P : total) total_images.push_back(image_place(c.h, P));

  auto coprime_g = [&](const PlaceP1& P) { return std::gcd(ramification_index(c.g, P), c.delta) == 1; };
  auto step = [&](const PlaceP1& P) -> std::optional<PlaceP1> {
    const PlaceP1 v = image_place(c.g, P);
    for (std::size_t i = 0; i < total.size(); ++i)
      if (total_images[i] == v) return total[i];
    return std::nullopt;
  };
  auto follow = [&](const PlaceP1& start) -> std::optional<WitnessOrbit> {
    WitnessOrbit w{start, {start}, false};
    PlaceP1 cur = start;
    for (unsigned i = 0; i < depth; ++i) {
      if (!coprime_g(cur)) return std::nullopt;
      auto nxt = step(cur);
      if (!nxt) return std::nullopt;
      if (std::find(w.orbit.begin(), w.orbit.end(), *nxt) != w.orbit.end()) {
        w.periodic = true;
        return w;
      }
      w.orbit.push_back(*nxt);
      cur = *nxt;
    }
    return w;
  };

  std::vector<PlaceP1> candidates;
  if (preferred) candidates.push_back(*preferred);
  for (const auto& P : total) candidates.push_back(P);
  for (const auto& img : total_images)
    for (const auto& q : preimage_places(c.g, img)) candidates.push_back(q.place);
  for (const auto& P : candidates)
    if (auto w = follow(P); w && w->periodic) return w;
  return std::nullopt;
}

SplittingSet splitting_set(const Correspondence& c) {
  const long p = c.field().characteristic();
  auto form = [&](const RatFunc& map) {
    std::vector<PlaceP1> out;
    const DivisorP1 d = divisor_of(c.phi.compose(map));
    for (const auto& [P, n] : d.terms())
      if (n % p != 0 && !contains(c.frak_s, P)) out.push_back(P);
    return out;  // sorted: DivisorP1 is an ordered map
  };
  SplittingSet s;
  s.frak_t = form(c.g);
  s.frak_t_size = geometric_size(s.frak_t);
  s.h_form_agrees = form(c.h) == s.frak_t;
  if (!s.h_form_agrees) throw InvariantViolation("splitting set differs between the g-form and the h-form");
  std::set<PlaceP1> tg, th;
  for (const auto& P : s.frak_t) {
    tg.insert(image_place(c.g, P));
    th.insert(image_place(c.h, P));
  }
  s.images_agree = tg == th;
  if (!s.images_agree) throw InvariantViolation("g(T) and h(T) differ");
  s.T.assign(tg.begin(), tg.end());
  return s;
}

Rational genus_bound(const Correspondence& c) {
  return Rational(static_cast<std::int64_t>(c.frak_s_size()) - 2, 2);
}

long level1_kummer_genus(const Correspondence& c) {
  if (!(c.h == RatFunc::x(c.field()).pow(2)))
    throw std::invalid_argument("level-one genus needs h = x^2");
  long odd = 0;
  const DivisorP1 d = divisor_of(c.g);
  for (const auto& [P, n] : d.terms())
    if (n % 2 != 0) odd += P.degree();
  if (odd % 2 != 0) throw std::logic_error("odd number of branch points");
  return (odd - 2) / 2;
}

DegreeOneReport degree_one_check(const Correspondence& c, std::uint64_t seed, unsigned samples) {
  DegreeOneReport r;
  r.seed = seed;
  const ImplicitCurve ic = implicitize(c.g, c.h);
  r.deg_a = ic.C.deg_a();
  r.deg_b = ic.C.deg_b();
  const bool degrees = ic.map_degree == 1 && r.deg_a == c.g.degree() && r.deg_b == c.h.degree();

  const std::uint32_t p = c.field().characteristic();
  const Field K = Field::make(p, static_cast<std::uint64_t>(p) * p <= (1u << 20) ? 2 : 1);
  const RatFunc gk = c.g.lift(K), hk = c.h.lift(K);
  const BiPoly C = ic.C.lift(K), Ca = C.deriv_a(), Cb = C.deriv_b();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint64_t> pick(0, K.order() - 1);
  for (unsigned tries = 0; r.samples < samples && tries < 20 * samples; ++tries) {
    const Residue t = static_cast<Residue>(pick(rng));
    const ProjPoint a = hk.eval(ProjPoint::at(t)), b = gk.eval(ProjPoint::at(t));
    if (a.inf || b.inf) continue;
    if (Ca.eval(a.v, b.v) == 0 && Cb.eval(a.v, b.v) == 0) continue;
    ++r.samples;
    const Poly ha = hk.num() - hk.den().scale(a.v), gb = gk.num() - gk.den().scale(b.v);
    const Poly common = gcd(ha, gb);
    unsigned fiber = common.degree() > 0 ? common.degree() - gcd(common, common.derivative()).degree() : 0;
    if (hk.eval(ProjPoint::infinity()) == a && gk.eval(ProjPoint::infinity()) == b) ++fiber;
    if (fiber != 1) ++r.sample_failures;
  }
  r.holds = degrees && r.samples > 0 && r.sample_failures == 0;
  return r;
}

MinimalSplittingField minimal_splitting_field(const Correspondence& c, unsigned k_max, std::uint64_t seed) {
  MinimalSplittingField out;
  out.k_max = k_max;
  const SplittingSet s = splitting_set(c);
  if (s.frak_t.empty()) {
    out.k = 1;
    return out;
  }
  const std::uint32_t p = c.field().characteristic();

  out.degree_one = degree_one_check(c, seed);
  if (out.degree_one.holds) {
    // alpha in frak_t over a smooth point of C is rational wherever g(alpha) is.
    const BiPoly C = implicitize(c.g, c.h).C;
    unsigned cert = 1;
    for (const auto& Q : s.T) cert = std::lcm(cert, Q.degree());
    for (const auto& P : s.frak_t) {
      const PlacePoint pt = P.inf ? PlacePoint{Field::make(p), ProjPoint::infinity()} : place_point(P);
      const ProjPoint a = c.h.lift(pt.field).eval(pt.point), b = c.g.lift(pt.field).eval(pt.point);
      const BiPoly Ck = C.lift(pt.field);
      const bool singular =
          a.inf || b.inf || (Ck.deriv_a().eval(a.v, b.v) == 0 && Ck.deriv_b().eval(a.v, b.v) == 0);
      if (singular) {
        out.singular_images.push_back(P.to_string());
        cert = std::lcm(cert, P.degree());
      }
    }
    out.certificate_used = true;
    out.certificate_k = cert;
  }

  for (unsigned k = 1; k <= k_max; ++k) {
    std::uint64_t rational = 0;
    for (const auto& P : s.frak_t)
      if (k % P.degree() == 0) rational += P.degree();
    if (rational < s.frak_t_size) continue;  // frak_t itself is not rational
    out.searched.push_back(k);
    const Field K = Field::make(p, k);
    const RatFunc gk = c.g.lift(K), hk = c.h.lift(K);
    bool split = true;
    for (const auto& P : s.frak_t) {
      for (const ProjPoint& x : points_on(P, K)) {
        const ProjPoint w = gk.eval(x);
        const Poly n = w.inf ? hk.den() : hk.num() - hk.den().scale(w.v);
        std::size_t fiber = n.is_zero() ? 0 : roots(n).size();
        if (hk.eval(ProjPoint::infinity()) == w) ++fiber;
        if (fiber != c.delta) split = false;
      }
      if (!split) break;
    }
    if (split) {
      out.k = k;
      break;
    }
  }
  return out;
}

LevelData enumerate_level(const TowerSpec& t, unsigned m, unsigned k) {
  return enumerate_level(t, m, k, splitting_set(t.corr));
}

LevelData enumerate_level(const TowerSpec& t, unsigned m, unsigned k, const SplittingSet& s) {
  const Correspondence& c = t.corr;
  if (k == 0) throw std::invalid_argument("extension degree must be positive");
  const std::uint32_t p = c.field().characteristic();
  const double size = std::pow(static_cast<double>(p), k) + 1;
  if (size * std::pow(static_cast<double>(c.delta), m) > static_cast<double>(t.guards.max_enum) ||
      size > static_cast<double>(Field::kMaxOrder))
    throw GuardExceeded("level " + std::to_string(m) + " over F_" + std::to_string(p) + "^" + std::to_string(k) +
                        " exceeds the enumeration guard " + std::to_string(t.guards.max_enum));
  const Field K = Field::make(p, k);
  const std::uint64_t q = K.order();
  const std::uint32_t npts = static_cast<std::uint32_t>(q + 1);

  const auto gmap = value_table(c.g, K), hmap = value_table(c.h, K);
  std::vector<std::vector<std::uint32_t>> hinv(npts);
  for (std::uint32_t i = 0; i < npts; ++i) hinv[hmap[i]].push_back(i);

  std::vector<char> in_s(npts, 0), in_t(npts, 0);
  for (const auto& P : c.frak_s)
    for (const auto& x : points_on(P, K)) in_s[index_of(x, q)] = 1;
  for (const auto& P : s.frak_t)
    for (const auto& x : points_on(P, K)) in_t[index_of(x, q)] = 1;

  LevelData out;
  out.m = m;
  out.k = k;
  for (std::uint32_t i = 0; i < npts; ++i) {
    if (!in_t[i]) continue;
    ++out.frak_t_rational;
    if (hinv[gmap[i]].size() != c.delta) out.fibers_full = false;
  }

  // Geometric fibre of h over each value reached from outside frak_s.
  std::vector<char> unbranched(npts, 1);
  {
    const RatFunc hk = c.h.lift(K);
    std::vector<char> done(npts, 0);
    for (std::uint32_t i = 0; i < npts; ++i) {
      if (in_s[i] || done[gmap[i]]) continue;
      done[gmap[i]] = 1;
      unbranched[gmap[i]] = geometric_fiber(hk, point_at(gmap[i], q)) == c.delta;
    }
  }

  struct Partial {
    std::uint64_t count = 0, split = 0, above = 0;
    bool s_closure = true, t_closure = true, branch = true;
    std::vector<std::vector<std::uint32_t>> points;
  };
  const std::uint64_t max_stored = t.guards.max_stored;
  auto run = [&](std::uint32_t lo, std::uint32_t hi, Partial& part) {
    std::vector<std::uint32_t> tuple(m + 1);
    // Explicit DFS over (depth, next index in the fibre).
    std::vector<std::size_t> pos(m + 1, 0);
    for (std::uint32_t x0 = lo; x0 < hi; ++x0) {
      tuple[0] = x0;
      if (m == 0) {
        ++part.count;
        if (in_t[x0]) ++part.split;
        if (in_s[x0]) ++part.above;
        if (part.points.size() < max_stored) part.points.push_back(tuple);
        continue;
      }
      unsigned depth = 1;
      pos[1] = 0;
      while (depth > 0) {
        const std::uint32_t prev = tuple[depth - 1];
        const auto& fib = hinv[gmap[prev]];
        if (pos[depth] >= fib.size()) {
          --depth;
          continue;
        }
        const std::uint32_t next = fib[pos[depth]++];
        if (pos[depth] == 1 && !in_s[prev] && !unbranched[gmap[prev]]) part.branch = false;
        if (in_s[prev] != in_s[next]) part.s_closure = false;
        if (in_t[prev] != in_t[next]) part.t_closure = false;
        tuple[depth] = next;
        if (depth == m) {
          ++part.count;
          if (in_t[x0]) ++part.split;
          if (in_s[x0]) ++part.above;
          if (part.points.size() < max_stored) part.points.push_back(tuple);
        } else {
          ++depth;
          pos[depth] = 0;
        }
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(t.guards.threads, npts));
  std::vector<Partial> parts(threads);
  if (threads == 1) {
    run(0, npts, parts[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) {
      const std::uint32_t lo = static_cast<std::uint32_t>(static_cast<std::uint64_t>(npts) * i / threads);
      const std::uint32_t hi = static_cast<std::uint32_t>(static_cast<std::uint64_t>(npts) * (i + 1) / threads);
      pool.emplace_back(run, lo, hi, std::ref(parts[i]));
    }
    for (auto& th : pool) th.join();
  }
  for (auto& part : parts) {
    out.count += part.count;
    out.split_count += part.split;
    out.above_s += part.above;
    out.s_closure = out.s_closure && part.s_closure;
    out.t_closure = out.t_closure && part.t_closure;
    out.branch_confined = out.branch_confined && part.branch;
    for (auto& tup : part.points) {
      if (out.points.size() >= max_stored) break;
      out.points.push_back(std::move(tup));
    }
  }
  out.truncated = out.count > out.points.size();
  return out;
}

std::uint64_t brute_force_count(const Correspondence& c, unsigned m, unsigned k) {
  const Field K = Field::make(c.field().characteristic(), k);
  const std::uint64_t q = K.order();
  const double total = std::pow(static_cast<double>(q + 1), m + 1);
  if (total > 5e7) throw GuardExceeded("brute force over " + std::to_string(q + 1) + "^" + std::to_string(m + 1));
  const RatFunc gk = c.g.lift(K), hk = c.h.lift(K);
  std::vector<ProjPoint> pts;
  for (std::uint64_t i = 0; i <= q; ++i) pts.push_back(i == q ? ProjPoint::infinity() : ProjPoint::at(static_cast<Residue>(i)));
  std::vector<std::size_t> idx(m + 1, 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (unsigned i = 1; i <= m && ok; ++i) ok = hk.eval(pts[idx[i]]) == gk.eval(pts[idx[i - 1]]);
    if (ok) ++count;
    unsigned d = 0;
    while (d <= m && ++idx[d] == pts.size()) idx[d++] = 0;
    if (d > m) break;
  }
  return count;
}

OptimalityReport optimality_report(const Correspondence& c, const SplittingSet& s,
                                   const MinimalSplittingField& msf) {
  OptimalityReport r;
  const std::uint32_t p = c.field().characteristic();
  r.nu_lower = s.frak_t_size;
  r.genus_bound = genus_bound(c);
  r.good = !s.frak_t.empty();
  const DivisorP1 d = divisor_of(c.phi);
  for (const auto& [P, n] : d.terms()) {
    if (n % static_cast<long>(p) == 0) continue;
    for (const auto& q : preimage_places(c.g, P))
      if (!contains(c.frak_s, q.place)) r.asgood_hypothesis = true;
  }
  if (msf.k) r.q = ipow(p, *msf.k);
  const std::int64_t R = static_cast<std::int64_t>(c.frak_s_size()) - 2;
  if (r.good && r.q && R > 0) {
    const std::int64_t lhs = 2 * static_cast<std::int64_t>(s.frak_t_size) + R;
    r.optimal = lhs * lhs == static_cast<std::int64_t>(*r.q) * R * R;
  }
  if (r.genus_bound > 0) r.lambda_lower = Rational(static_cast<std::int64_t>(s.frak_t_size)) / r.genus_bound;
  return r;
}

OptimalityReport optimality_report(const TowerSpec& t) {
  const SplittingSet s = splitting_set(t.corr);
  const auto msf = minimal_splitting_field(t.corr, t.guards.max_ext, t.guards.seed);
  return optimality_report(t.corr, s, msf);
}

namespace {

RatFunc evaluate_at(const BiPoly& d, const RatFunc& u, const RatFunc& v) {
  RatFunc acc(d.field());
  for (int j = d.deg_b(); j >= 0; --j) acc = acc * v + RatFunc(d.row(static_cast<std::size_t>(j))).compose(u);
  return acc;
}

}  // namespace

PullbackReport verify_pullback_correspondence(const Correspondence& c, const PullbackData& d) {
  PullbackReport r;
  const BiPoly C = implicitize(c.g, c.h).C;
  r.divides = d.component.divides(substitute(C, d.f, d.f));
  r.vanishes = evaluate_at(d.component, d.h_tilde, d.g_tilde).is_zero();
  r.commutes = c.g.compose(d.phi_map) == d.f.compose(d.g_tilde) && c.h.compose(d.phi_map) == d.f.compose(d.h_tilde);
  const FuchsianOperator lf = pullback_operator(c.op, d.f);
  r.adapted = check_adapted(d.g_tilde, d.h_tilde, lf).adapted;
  auto S_f = places_of(preimage_points(d.f, c.S));
  auto res = check_correspondence(d.g_tilde, d.h_tilde, S_f, lf, c.phi.compose(d.f));
  r.violations = std::move(res.violations);
  if (!r.divides) r.violations.push_back({Violation::kComponentNotFactor, d.component.to_string("A", "B")});
  if (!r.vanishes) r.violations.push_back({Violation::kComponentNotVanishing, "at (h~, g~)"});
  if (!r.commutes) r.violations.push_back({Violation::kDiagramNotCommuting, "g o phi vs f o g~, h o phi vs f o h~"});
  if (r.violations.empty()) r.pulled_back = std::move(res.value);
  return r;
}

bool unbranched_outside(const RatFunc& f, const std::vector<PlaceP1>& places) {
  for (const auto& r : ramification_data(f))
    if (std::find(places.begin(), places.end(), r.image) == places.end()) return false;
  return true;
}

}  // namespace towerlab
