#include "towerlab/tower_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "towerlab/fixtures.hpp"

namespace towerlab {

using nlohmann::json;
using nlohmann::ordered_json;

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column, std::string pointer)
    : std::runtime_error(what), line(line), column(column), pointer(std::move(pointer)) {}

namespace {

// Finds where the value at a JSON pointer starts in already-valid text.
class Locator {
 public:
  Locator(std::string_view s, std::string target) : s_(s), target_(std::move(target)) {}

  std::optional<std::size_t> run() {
    value("");
    return found_;
  }

 private:
  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  std::string str() {
    std::string out;
    ++i_;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\') ++i_;
      if (i_ < s_.size()) out += s_[i_++];
    }
    ++i_;
    return out;
  }

  static std::string escape(const std::string& key) {
    std::string out;
    for (char c : key) {
      if (c == '~') out += "~0";
      else if (c == '/') out += "~1";
      else out += c;
    }
    return out;
  }

  void value(const std::string& path) {
    ws();
    if (i_ >= s_.size() || found_) return;
    if (path == target_) {
      found_ = i_;
      return;
    }
    const char c = s_[i_];
    if (c == '{') {
      ++i_;
      while (!found_) {
        ws();
        if (i_ >= s_.size() || s_[i_] == '}') break;
        const std::string key = str();
        ws();
        ++i_;  // ':'
        value(path + "/" + escape(key));
        ws();
        if (i_ < s_.size() && s_[i_] == ',') ++i_;
      }
      ++i_;
    } else if (c == '[') {
      ++i_;
      for (std::size_t n = 0; !found_; ++n) {
        ws();
        if (i_ >= s_.size() || s_[i_] == ']') break;
        value(path + "/" + std::to_string(n));
        ws();
        if (i_ < s_.size() && s_[i_] == ',') ++i_;
      }
      ++i_;
    } else if (c == '"') {
      str();
    } else {
      while (i_ < s_.size() && std::string_view(",]} \t\r\n").find(s_[i_]) == std::string_view::npos) ++i_;
    }
  }

  std::string_view s_;
  std::string target_;
  std::size_t i_ = 0;
  std::optional<std::size_t> found_;
};

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t offset) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Error inside a coefficient string, at character `at` of the string.
struct TextError {
  std::string what;
  std::size_t at;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(const json::json_pointer& ptr, const std::string& what, std::size_t inner = 0) const {
    const std::string pointer = ptr.to_string();
    const auto off = Locator(text_, pointer).run();
    const std::size_t at = off ? *off + inner : 0;
    const auto [line, col] = off ? line_col(text_, at) : std::pair<std::size_t, std::size_t>{0, 0};
    throw ParseError(std::to_string(line) + ":" + std::to_string(col) + ": " +
                         (pointer.empty() ? std::string("document") : pointer) + ": " + what,
                     line, col, pointer);
  }

  const json& at(const json& obj, const json::json_pointer& ptr, const std::string& key) const {
    if (!obj.contains(key)) fail(ptr, "missing field '" + key + "'");
    return obj.at(key);
  }

  std::int64_t integer(const json& v, const json::json_pointer& ptr) const {
    if (!v.is_number_integer()) fail(ptr, "expected an integer");
    return v.get<std::int64_t>();
  }

  RatFunc ratfunc(const Field& f, const json& v, const json::json_pointer& ptr) const {
    if (!v.is_string()) fail(ptr, "expected a rational function string such as \"[0,1]/[1,1]\"");
    const std::string s = v.get<std::string>();
    try {
      return parse_text(f, s);
    } catch (const TextError& e) {
      fail(ptr, e.what, e.at + 1);  // +1 for the opening quote
    }
  }

  PlaceP1 place(const Field& f, const json& v, const json::json_pointer& ptr) const {
    if (v.is_string()) {
      if (v.get<std::string>() == "inf") return PlaceP1::infinity();
      fail(ptr, "a place is an integer, \"inf\" or a coefficient list");
    }
    if (v.is_number_integer()) return PlaceP1::rational(f, f.from_int(v.get<std::int64_t>()));
    if (v.is_array()) {
      std::vector<std::int64_t> c;
      for (std::size_t i = 0; i < v.size(); ++i) c.push_back(integer(v[i], ptr / i));
      const Poly P = Poly::from_ints(f, c);
      if (P.degree() < 1 || !P.is_monic()) fail(ptr, "place polynomial must be monic of positive degree");
      if (!is_irreducible(P)) fail(ptr, "place polynomial " + P.to_string() + " is reducible");
      return PlaceP1::finite(P);
    }
    fail(ptr, "a place is an integer, \"inf\" or a coefficient list");
  }

  BiPoly component(const Field& f, const json& v, const json::json_pointer& ptr) const {
    if (!v.is_array() || v.empty()) fail(ptr, "expected a nonempty list of [i, j, c] terms");
    std::vector<BiPoly::Term> terms;
    for (std::size_t n = 0; n < v.size(); ++n) {
      const auto& t = v[n];
      if (!t.is_array() || t.size() != 3) fail(ptr / n, "expected [i, j, c]");
      const std::int64_t i = integer(t[0], ptr / n / 0), j = integer(t[1], ptr / n / 1);
      if (i < 0 || j < 0) fail(ptr / n, "negative exponent");
      terms.push_back({static_cast<unsigned>(i), static_cast<unsigned>(j), integer(t[2], ptr / n / 2)});
    }
    return BiPoly::from_terms(f, terms);
  }

  static RatFunc parse_text(const Field& f, std::string_view s) {
    std::size_t i = 0;
    auto ws = [&] {
      while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    auto list = [&] {
      ws();
      if (i >= s.size() || s[i] != '[') throw TextError{"expected '['", i};
      ++i;
      std::vector<std::int64_t> c;
      ws();
      if (i < s.size() && s[i] == ']') throw TextError{"empty coefficient list", i};
      while (true) {
        ws();
        const std::size_t start = i;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start || !std::isdigit(static_cast<unsigned char>(s[i - 1])))
          throw TextError{"expected a decimal coefficient", start};
        if (i - start > 18) throw TextError{"coefficient too long", start};
        c.push_back(std::stoll(std::string(s.substr(start, i - start))));
        ws();
        if (i < s.size() && s[i] == ',') {
          ++i;
          continue;
        }
        if (i < s.size() && s[i] == ']') {
          ++i;
          break;
        }
        throw TextError{"expected ',' or ']'", i};
      }
      return Poly::from_ints(f, c);
    };
    const Poly num = list();
    ws();
    Poly den = Poly::constant(f, 1);
    if (i < s.size() && s[i] == '/') {
      ++i;
      const std::size_t at = i;
      den = list();
      if (den.is_zero()) throw TextError{"zero denominator", at};
    }
    ws();
    if (i != s.size()) throw TextError{"trailing characters", i};
    return RatFunc(num, den);
  }

 private:
  std::string_view text_;
};

ordered_json place_json(const PlaceP1& P) {
  if (P.inf) return "inf";
  if (P.poly->degree() == 1) return P.poly->field().neg(P.poly->coeff(0));
  ordered_json a = ordered_json::array();
  for (Residue c : P.poly->coeffs()) a.push_back(c);
  return a;
}

std::string list_text(const Poly& p) {
  std::string s = "[";
  if (p.is_zero()) s += "0";
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) s += (i ? "," : "") + std::to_string(p.coeffs()[i]);
  return s + "]";
}

ordered_json component_json(const BiPoly& c) {
  ordered_json a = ordered_json::array();
  for (std::size_t j = 0; j < c.rows().size(); ++j)
    for (std::size_t i = 0; i < c.rows()[j].coeffs().size(); ++i)
      if (Residue v = c.rows()[j].coeffs()[i]; v != 0) a.push_back({i, j, v});
  return a;
}

ordered_json places_json(const std::vector<PlaceP1>& v) {
  ordered_json a = ordered_json::array();
  for (const auto& P : v) a.push_back(place_json(P));
  return a;
}

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

std::string rational_text(const Rational& r) { return to_string(r); }

}  // namespace

RatFunc parse_ratfunc(const Field& f, std::string_view s) {
  try {
    return Reader::parse_text(f, s);
  } catch (const TextError& e) {
    throw ParseError("column " + std::to_string(e.at + 1) + ": " + e.what, 1, e.at + 1, "");
  }
}

std::string format_ratfunc(const RatFunc& r) {
  if (r.den().is_one()) return list_text(r.num());
  return list_text(r.num()) + "/" + list_text(r.den());
}

TowerDefinition parse_tower(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const std::size_t off = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, col] = line_col(text, off);
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    throw ParseError(std::to_string(line) + ":" + std::to_string(col) + ": " + what, line, col, "");
  }
  const Reader rd(text);
  const json::json_pointer root;
  if (!doc.is_object()) rd.fail(root, "expected a JSON object");
  static const std::vector<std::string> known{"name", "p", "k", "g", "h", "S", "operator", "phi",
                                              "pullback", "witness", "modular_level"};
  for (const auto& [key, _] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) rd.fail(root / key, "unknown field");

  const std::int64_t p = rd.integer(rd.at(doc, root, "p"), root / "p");
  if (p < 3 || p > 65521 || !is_prime(static_cast<std::uint64_t>(p)))
    rd.fail(root / "p", "p must be an odd prime below 2^16");
  const Field f = Field::make(static_cast<std::uint32_t>(p));

  std::string name = "custom";
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) rd.fail(root / "name", "expected a string");
    name = doc["name"].get<std::string>();
  }
  unsigned k = 0;
  if (doc.contains("k")) {
    const std::int64_t v = rd.integer(doc["k"], root / "k");
    if (v < 0 || v > 12) rd.fail(root / "k", "k must lie in 0..12");
    k = static_cast<unsigned>(v);
  }

  const RatFunc g = rd.ratfunc(f, rd.at(doc, root, "g"), root / "g");
  const RatFunc h = rd.ratfunc(f, rd.at(doc, root, "h"), root / "h");
  const json& s = rd.at(doc, root, "S");
  if (!s.is_array()) rd.fail(root / "S", "expected a list of places");
  std::vector<PlaceP1> S;
  for (std::size_t i = 0; i < s.size(); ++i) S.push_back(rd.place(f, s[i], root / "S" / i));

  const json& o = rd.at(doc, root, "operator");
  const auto op_ptr = root / "operator";
  if (!o.is_object()) rd.fail(op_ptr, "expected {\"a1\": ..., \"a2\": ...}");
  for (const auto& [key, _] : o.items())
    if (key != "a0" && key != "a1" && key != "a2") rd.fail(op_ptr / key, "unknown field");
  const RatFunc a1 = rd.ratfunc(f, rd.at(o, op_ptr, "a1"), op_ptr / "a1");
  const RatFunc a2 = rd.ratfunc(f, rd.at(o, op_ptr, "a2"), op_ptr / "a2");
  FuchsianOperator op{a1, a2};
  if (o.contains("a0")) {
    const RatFunc a0 = rd.ratfunc(f, o["a0"], op_ptr / "a0");
    if (a0.is_zero()) rd.fail(op_ptr / "a0", "leading coefficient is zero");
    op = FuchsianOperator::from_coefficients(a0, a1, a2);
  }
  const RatFunc phi = rd.ratfunc(f, rd.at(doc, root, "phi"), root / "phi");

  std::optional<PullbackData> pb;
  if (doc.contains("pullback")) {
    const json& b = doc["pullback"];
    const auto bp = root / "pullback";
    if (!b.is_object()) rd.fail(bp, "expected an object");
    for (const auto& [key, _] : b.items())
      if (key != "f" && key != "component" && key != "g_tilde" && key != "h_tilde" && key != "phi_map")
        rd.fail(bp / key, "unknown field");
    pb = PullbackData{rd.ratfunc(f, rd.at(b, bp, "f"), bp / "f"),
                      rd.component(f, rd.at(b, bp, "component"), bp / "component"),
                      rd.ratfunc(f, rd.at(b, bp, "g_tilde"), bp / "g_tilde"),
                      rd.ratfunc(f, rd.at(b, bp, "h_tilde"), bp / "h_tilde"),
                      rd.ratfunc(f, rd.at(b, bp, "phi_map"), bp / "phi_map")};
  }
  std::optional<PlaceP1> witness;
  if (doc.contains("witness")) witness = rd.place(f, doc["witness"], root / "witness");
  std::optional<std::uint64_t> level;
  if (doc.contains("modular_level")) {
    const std::int64_t n = rd.integer(doc["modular_level"], root / "modular_level");
    if (n < 1 || n % p == 0) rd.fail(root / "modular_level", "level must be positive and prime to p");
    level = static_cast<std::uint64_t>(n);
  }
  return {name, f, k, g, h, std::move(S), op, phi, std::move(pb), witness, level};
}

TowerDefinition read_tower_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path, 0, 0, "");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_tower(ss.str());
}

std::string write_tower(const TowerDefinition& def) {
  ordered_json j;
  j["name"] = def.name;
  j["p"] = def.field.characteristic();
  j["k"] = def.k;
  j["g"] = format_ratfunc(def.g);
  j["h"] = format_ratfunc(def.h);
  j["S"] = places_json(def.S);
  j["operator"] = {{"a1", format_ratfunc(def.op.a1)}, {"a2", format_ratfunc(def.op.a2)}};
  j["phi"] = format_ratfunc(def.phi);
  if (def.pullback) {
    const auto& b = *def.pullback;
    j["pullback"] = {{"f", format_ratfunc(b.f)},
                     {"component", component_json(b.component)},
                     {"g_tilde", format_ratfunc(b.g_tilde)},
                     {"h_tilde", format_ratfunc(b.h_tilde)},
                     {"phi_map", format_ratfunc(b.phi_map)}};
  }
  if (def.witness) j["witness"] = place_json(*def.witness);
  if (def.modular_level) j["modular_level"] = *def.modular_level;
  return j.dump(2) + "\n";
}

TowerSpec build_tower(const TowerDefinition& def, const Guards& guards) {
  Correspondence base = validate_correspondence(def.g, def.h, def.S, def.op, def.phi);
  if (!def.pullback) return {std::move(base), def.k, def.witness, def.modular_level, guards};
  PullbackReport r = verify_pullback_correspondence(base, *def.pullback);
  if (!r.ok()) throw CorrespondenceError(std::move(r.violations));
  return {std::move(*r.pulled_back), def.k, def.witness, def.modular_level, guards};
}

TowerDefinition fixture_definition(const std::string& name, std::uint32_t p) {
  const Fixture fx = tower_fixture(name, p);
  const Correspondence& c = fx.pullback ? tower_fixture(fx.base, p).spec.corr : fx.spec.corr;
  return {fx.name, c.field(), fx.spec.k, c.g, c.h, c.S, c.op, c.phi, fx.pullback, fx.spec.witness,
          fx.spec.modular_level};
}

bool ExperimentReport::checks_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const InvariantCheck& c) { return c.ok; });
}

int ExperimentReport::exit_code() const {
  if (!checks_ok()) return 4;
  if (guard_exhausted) return 3;
  return 0;
}

ExperimentReport run_experiment(const TowerDefinition& def, const std::string& source, unsigned m_min,
                                unsigned m_max, unsigned k, const Guards& guards) {
  if (m_min > m_max) throw std::invalid_argument("empty level range");
  ExperimentReport r{.source = source, .def = def, .spec = build_tower(def, guards)};
  const Correspondence& c = r.spec.corr;
  const std::uint32_t p = c.field().characteristic();
  auto check = [&](const std::string& name, bool ok, const std::string& detail = "") {
    r.checks.push_back({name, ok, detail});
  };

  r.witness = totally_branched_witness(c, guards.witness_depth, r.spec.witness);
  r.splitting = splitting_set(c);
  r.msf = minimal_splitting_field(c, guards.max_ext, guards.seed);
  r.optimality = optimality_report(c, r.splitting, r.msf);
  if (c.h == RatFunc::x(c.field()).pow(2)) {
    r.level1_genus = level1_kummer_genus(c);
    check("level1-genus-bound", Rational(*r.level1_genus) <= r.optimality.genus_bound,
          std::to_string(*r.level1_genus) + " <= " + rational_text(r.optimality.genus_bound));
  }
  if (r.spec.modular_level) {
    r.modular = x0_invariants(*r.spec.modular_level);
    r.limits = modular_limits(*r.spec.modular_level, p);
  }

  for (const auto& [label, u] : {std::pair<const char*, RatFunc>{"g", c.g},
                                 {"h", c.h},
                                 {"phi o g", c.phi.compose(c.g)},
                                 {"phi o h", c.phi.compose(c.h)}}) {
    const long d = divisor_of(u).degree();
    check(std::string("divisor-degree-zero(") + label + ")", d == 0, "degree " + std::to_string(d));
  }
  if (r.msf.k && r.msf.certificate_k)
    check("certificate-consistent", *r.msf.certificate_k % *r.msf.k == 0,
          "measured " + std::to_string(*r.msf.k) + ", certificate " + std::to_string(*r.msf.certificate_k));

  r.k = k ? k : (r.spec.k ? r.spec.k : r.msf.k.value_or(1));
  const bool split_field = r.msf.k && r.k % *r.msf.k == 0;
  for (unsigned m = m_min; m <= m_max; ++m) {
    LevelData L;
    try {
      L = enumerate_level(r.spec, m, r.k, r.splitting);
    } catch (const GuardExceeded& e) {
      r.guard_exhausted = e.what();
      break;
    }
    const std::string at = "m=" + std::to_string(m);
    check("S-closure", L.s_closure, at);
    check("T-closure", L.t_closure, at);
    check("branch-confinement", L.branch_confined, at);
    if (m == 0) check("level0-count", L.count == ipow(p, r.k) + 1, at);
    if (split_field) {
      const std::uint64_t expected = r.splitting.frak_t_size * ipow(c.delta, m);
      check("split-growth", L.fibers_full && L.split_count == expected,
            at + ": " + std::to_string(L.split_count) + " of " + std::to_string(expected));
    }
    r.levels.push_back(std::move(L));
  }

  const OptimalityReport& o = r.optimality;
  if (!o.good) r.verdict = "not certified good";
  else if (!r.msf.k) r.verdict = "good; minimal splitting field beyond degree " + std::to_string(r.msf.k_max);
  else if (o.optimal) r.verdict = "optimal criterion satisfied";
  else r.verdict = "good; optimal criterion not satisfied";
  return r;
}

namespace {

ordered_json level_json(const LevelData& L, std::uint64_t expected_split, bool split_field) {
  ordered_json j;
  j["m"] = L.m;
  j["k"] = L.k;
  j["count"] = L.count;
  j["split_count"] = L.split_count;
  j["expected_split"] = split_field ? ordered_json(expected_split) : ordered_json(nullptr);
  j["above_S"] = L.above_s;
  j["T_rational"] = L.frak_t_rational;
  j["fibers_full"] = L.fibers_full;
  j["S_closure"] = L.s_closure;
  j["T_closure"] = L.t_closure;
  j["branch_confined"] = L.branch_confined;
  return j;
}

std::string optional_text(const std::optional<unsigned>& k, unsigned k_max) {
  return k ? std::to_string(*k) : "> " + std::to_string(k_max);
}

}  // namespace

std::string report_json(const ExperimentReport& r) {
  const Correspondence& c = r.spec.corr;
  const std::uint32_t p = c.field().characteristic();
  ordered_json j;
  j["schema_version"] = ExperimentReport::kSchemaVersion;

  ordered_json t;
  t["name"] = r.def.name;
  t["source"] = r.source;
  t["p"] = p;
  t["g"] = format_ratfunc(c.g);
  t["h"] = format_ratfunc(c.h);
  t["S"] = places_json(c.S);
  t["operator"] = {{"a1", format_ratfunc(c.op.a1)}, {"a2", format_ratfunc(c.op.a2)}};
  t["phi"] = format_ratfunc(c.phi);
  t["delta"] = c.delta;
  t["frak_S"] = places_json(c.frak_s);
  t["frak_S_size"] = c.frak_s_size();
  t["twist"] = format_ratfunc(c.twist);
  if (r.def.pullback) {
    t["pullback_of"] = {{"g", format_ratfunc(r.def.g)}, {"h", format_ratfunc(r.def.h)},
                        {"f", format_ratfunc(r.def.pullback->f)}};
  }
  j["tower"] = t;

  const Guards& gd = r.spec.guards;
  j["guards"] = {{"max_enum", gd.max_enum},   {"max_stored", gd.max_stored},       {"max_ext", gd.max_ext},
                 {"witness_depth", gd.witness_depth}, {"seed", gd.seed}};

  ordered_json a;
  a["degrees_equal"] = true;
  a["separable"] = true;
  a["tame"] = true;
  a["frak_S_equal"] = true;
  a["adapted"] = true;
  a["disjointness"] = {{"method", "moebius search, heuristic"},
                       {"searched", c.disjoint_checked},
                       {"common_factor_found", false}};
  ordered_json w;
  w["found"] = r.witness.has_value();
  if (r.witness) {
    w["start"] = place_json(r.witness->start);
    w["orbit"] = places_json(r.witness->orbit);
    w["periodic"] = r.witness->periodic;
  }
  w["depth"] = gd.witness_depth;
  a["totally_branched_witness"] = w;
  const auto& d1 = r.msf.degree_one;
  if (d1.samples == 0 && d1.deg_a == 0) {
    a["degree_one"] = nullptr;  // not needed: frak_T is empty
  } else {
    a["degree_one"] = {{"holds", d1.holds},         {"deg_a", d1.deg_a}, {"deg_b", d1.deg_b},
                       {"samples", d1.samples},     {"sample_failures", d1.sample_failures},
                       {"seed", d1.seed}};
  }
  j["assumptions"] = a;

  ordered_json s;
  s["frak_T"] = places_json(r.splitting.frak_t);
  s["frak_T_size"] = r.splitting.frak_t_size;
  s["T"] = places_json(r.splitting.T);
  s["h_form_agrees"] = r.splitting.h_form_agrees;
  s["images_agree"] = r.splitting.images_agree;
  s["minimal_splitting_degree"] = r.msf.k ? ordered_json(*r.msf.k) : ordered_json(nullptr);
  s["minimal_splitting_text"] = optional_text(r.msf.k, r.msf.k_max);
  s["k_max"] = r.msf.k_max;
  s["degrees_searched"] = r.msf.searched;
  s["certificate"] = {{"used", r.msf.certificate_used},
                      {"k", r.msf.certificate_k ? ordered_json(*r.msf.certificate_k) : ordered_json(nullptr)},
                      {"singular_images", r.msf.singular_images}};
  s["genus_bound"] = rational_text(r.optimality.genus_bound);
  s["level1_genus"] = r.level1_genus ? ordered_json(*r.level1_genus) : ordered_json(nullptr);
  j["splitting"] = s;

  const bool split_field = r.msf.k && r.k % *r.msf.k == 0;
  ordered_json levels = ordered_json::array();
  std::uint64_t dm = 1;
  unsigned m_prev = 0;
  for (const auto& L : r.levels) {
    while (m_prev < L.m) {
      dm *= c.delta;
      ++m_prev;
    }
    levels.push_back(level_json(L, r.splitting.frak_t_size * dm, split_field));
  }
  j["levels"] = levels;

  ordered_json checks = ordered_json::array();
  for (const auto& ch : r.checks) checks.push_back({{"name", ch.name}, {"ok", ch.ok}, {"detail", ch.detail}});
  j["checks"] = checks;
  if (r.guard_exhausted) j["guard_exhausted"] = *r.guard_exhausted;

  if (r.modular && r.limits) {
    j["modular"] = {{"N", r.modular->N},
                    {"genus_X0", rational_text(r.modular->genus)},
                    {"mu", r.limits->mu},
                    {"genus_limit", rational_text(r.limits->genus_limit)},
                    {"split_bound", rational_text(r.limits->split_bound)},
                    {"ratio", rational_text(r.limits->ratio)},
                    {"meets_dv_bound", r.limits->meets_dv_bound}};
  }

  const OptimalityReport& o = r.optimality;
  ordered_json v;
  v["text"] = r.verdict;
  v["good"] = o.good;
  v["asgood_hypothesis"] = o.asgood_hypothesis;
  v["optimal"] = o.optimal;
  v["q"] = o.q ? ordered_json(*o.q) : ordered_json(nullptr);
  v["nu_lower"] = o.nu_lower;
  v["genus_bound"] = rational_text(o.genus_bound);
  v["lambda_lower"] = o.lambda_lower ? ordered_json(rational_text(*o.lambda_lower)) : ordered_json(nullptr);
  if (o.q) {
    const std::int64_t R = static_cast<std::int64_t>(c.frak_s_size()) - 2;
    v["optimality_equation"] = {{"lhs_2T", 2 * static_cast<std::int64_t>(r.splitting.frak_t_size)},
                                {"rhs_sqrtq_minus_1_times_R", R},
                                {"q", *o.q}};
  }
  j["verdict"] = v;
  return j.dump(2) + "\n";
}

std::string report_table(const ExperimentReport& r) {
  const Correspondence& c = r.spec.corr;
  std::ostringstream out;
  out << "tower " << r.def.name << " over F_" << c.field().characteristic() << "  (" << r.source << ")\n";
  out << "  g = " << c.g.to_string() << "\n  h = " << c.h.to_string() << "\n";
  out << "  delta = " << c.delta << ", #frak_S = " << c.frak_s_size() << ", genus bound "
      << to_string(r.optimality.genus_bound);
  if (r.level1_genus) out << ", genus X_1 = " << *r.level1_genus;
  out << "\n  witness: ";
  if (r.witness) {
    for (std::size_t i = 0; i < r.witness->orbit.size(); ++i)
      out << (i ? " -> " : "") << r.witness->orbit[i].to_string();
    out << (r.witness->periodic ? " (periodic)" : " (depth reached)");
  } else {
    out << "none found";
  }
  out << "\n  #frak_T = " << r.splitting.frak_t_size << ", T = {";
  for (std::size_t i = 0; i < r.splitting.T.size(); ++i) out << (i ? ", " : "") << r.splitting.T[i].to_string();
  out << "}\n  minimal splitting degree " << optional_text(r.msf.k, r.msf.k_max);
  if (r.msf.certificate_k) out << " (certificate " << *r.msf.certificate_k << ")";
  out << "\n";
  if (r.modular && r.limits)
    out << "  X_0(" << r.modular->N << "): genus limit " << to_string(r.limits->genus_limit) << ", split bound "
        << to_string(r.limits->split_bound) << "\n";

  const std::vector<std::string> head{"m", "k", "count", "split", "expected", "above S", "S-cl", "T-cl", "branch"};
  std::vector<std::vector<std::string>> rows;
  const bool split_field = r.msf.k && r.k % *r.msf.k == 0;
  for (const auto& L : r.levels) {
    const std::uint64_t expected = r.splitting.frak_t_size * ipow(c.delta, L.m);
    auto yn = [](bool b) { return std::string(b ? "ok" : "FAIL"); };
    rows.push_back({std::to_string(L.m), std::to_string(L.k), std::to_string(L.count), std::to_string(L.split_count),
                    split_field ? std::to_string(expected) : "-", std::to_string(L.above_s), yn(L.s_closure),
                    yn(L.t_closure), yn(L.branch_confined)});
  }
  std::vector<std::size_t> w(head.size());
  for (std::size_t i = 0; i < head.size(); ++i) {
    w[i] = head[i].size();
    for (const auto& row : rows) w[i] = std::max(w[i], row[i].size());
  }
  auto line = [&](const std::vector<std::string>& cells) {
    out << " ";
    for (std::size_t i = 0; i < cells.size(); ++i) out << " " << std::setw(static_cast<int>(w[i])) << cells[i];
    out << "\n";
  };
  line(head);
  for (const auto& row : rows) line(row);
  if (r.guard_exhausted) out << "  guard: " << *r.guard_exhausted << "\n";
  for (const auto& ch : r.checks)
    if (!ch.ok) out << "  FAILED " << ch.name << " " << ch.detail << "\n";
  out << "  verdict: " << r.verdict;
  if (r.optimality.good && r.optimality.lambda_lower) out << " (lambda >= " << to_string(*r.optimality.lambda_lower) << ")";
  out << "\n";
  return out.str();
}

std::string report_csv(const ExperimentReport& r) {
  const Correspondence& c = r.spec.corr;
  std::ostringstream out;
  out << "tower,p,m,k,count,split_count,expected_split,above_S,fibers_full,S_closure,T_closure,branch_confined\n";
  const bool split_field = r.msf.k && r.k % *r.msf.k == 0;
  for (const auto& L : r.levels) {
    out << r.def.name << "," << c.field().characteristic() << "," << L.m << "," << L.k << "," << L.count << ","
        << L.split_count << ",";
    if (split_field) out << r.splitting.frak_t_size * ipow(c.delta, L.m);
    out << "," << L.above_s << "," << L.fibers_full << "," << L.s_closure << "," << L.t_closure << ","
        << L.branch_confined << "\n";
  }
  return out.str();
}

}  // namespace towerlab
