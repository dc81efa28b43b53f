// towerlab: batch driver for tower experiments.
//
// Exit codes: 0 success, 2 configuration or parse error, 3 enumeration guard
// exhausted, 4 invariant violation (the report is still written).

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "towerlab/fixtures.hpp"
#include "towerlab/tower_io.hpp"

using namespace towerlab;

namespace {

constexpr int kOk = 0;
constexpr int kConfig = 2;
constexpr int kGuard = 3;
constexpr int kInvariant = 4;

struct ConfigError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::pair<unsigned, unsigned> parse_range(const std::string& s, const std::string& what) {
  const auto dots = s.find("..");
  try {
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const unsigned v = static_cast<unsigned>(std::stoul(s, &used));
      if (used != s.size()) throw std::invalid_argument(s);
      return {v, v};
    }
    const std::string a = s.substr(0, dots), b = s.substr(dots + 2);
    const unsigned lo = static_cast<unsigned>(std::stoul(a, &used));
    if (used != a.size()) throw std::invalid_argument(s);
    const unsigned hi = static_cast<unsigned>(std::stoul(b, &used));
    if (used != b.size()) throw std::invalid_argument(s);
    if (lo > hi) throw ConfigError(what + " range " + s + " is empty");
    return {lo, hi};
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("bad " + what + " range '" + s + "', expected a..b");
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw ConfigError("cannot write " + out);
  f << text;
}

// Plain aligned table; the first row is the header.
std::string table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w;
  for (const auto& r : rows) {
    w.resize(std::max(w.size(), r.size()));
    for (std::size_t i = 0; i < r.size(); ++i) w[i] = std::max(w[i], r[i].size());
  }
  std::ostringstream out;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      out << (i ? "  " : "") << r[i];
      if (i + 1 < r.size()) out << std::string(w[i] - r[i].size(), ' ');
    }
    out << "\n";
  }
  return out.str();
}

std::string csv(const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) out << (i ? "," : "") << r[i];
    out << "\n";
  }
  return out.str();
}

std::string with_lift(const Field& k, Residue x) {
  const std::string lift = rational_lift(k, x);
  const std::string v = k.format(x);
  return lift.empty() || lift == v ? v : v + " (" + lift + ")";
}

std::vector<std::vector<std::string>> singularity_rows(const FuchsianOperator& L) {
  std::vector<std::vector<std::string>> rows{{"place", "deg", "c1", "c2", "exponents", "note"}};
  for (const auto& s : singular_points(L)) {
    const Field& k = s.field;
    std::string note = s.apparent ? "apparent" : "";
    if (s.gamma1 == s.gamma2) note += note.empty() ? "equal exponents" : ", equal exponents";
    rows.push_back({s.place.to_string(), std::to_string(s.place.degree()), k.format(s.c1), k.format(s.c2),
                    "(" + with_lift(k, s.gamma1) + ", " + with_lift(k, s.gamma2) + ")", note});
  }
  return rows;
}

FuchsianOperator operator_from(const std::string& fixture, const std::string& file, const std::string& a1,
                               const std::string& a2, std::uint32_t p) {
  const int given = !fixture.empty() + !file.empty() + (!a1.empty() || !a2.empty());
  if (given != 1) throw ConfigError("give exactly one of --fixture, --file or --a1/--a2");
  if (!fixture.empty()) return operator_fixture(fixture, p);
  if (!file.empty()) return read_tower_file(file).op;
  if (a1.empty() || a2.empty()) throw ConfigError("--a1 and --a2 go together");
  const Field f = Field::make(p);
  return {parse_ratfunc(f, a1), parse_ratfunc(f, a2)};
}

struct RunOptions {
  std::string fixture;
  std::string file;
  std::uint32_t p = 7;
  std::string levels = "0..2";
  unsigned k = 0;
  std::string format = "table";
  std::string out;
  Guards guards;
};

int run(const RunOptions& o) {
  if (o.fixture.empty() == o.file.empty()) throw ConfigError("give exactly one of --fixture or --file");
  const auto [m_min, m_max] = parse_range(o.levels, "level");
  const TowerDefinition def = o.file.empty() ? fixture_definition(o.fixture, o.p) : read_tower_file(o.file);
  const std::string source = o.file.empty() ? "fixture:" + o.fixture : o.file;
  const ExperimentReport r = run_experiment(def, source, m_min, m_max, o.k, o.guards);
  if (o.format == "json") emit(report_json(r), o.out);
  else if (o.format == "csv") emit(report_csv(r), o.out);
  else emit(report_table(r), o.out);
  if (r.guard_exhausted) std::cerr << "towerlab: " << *r.guard_exhausted << "\n";
  for (const auto& c : r.checks)
    if (!c.ok) std::cerr << "towerlab: invariant " << c.name << " failed (" << c.detail << ")\n";
  return r.exit_code();
}

std::string ss_table(unsigned lo, unsigned hi, const std::string& format) {
  std::vector<std::vector<std::string>> rows{
      {"p", "deg_Phi", "(p-1)/2", "alpha", "delta", "eps", "deg_Phi1", "shape", "simple", "roots_in_Fp2",
       "fourth_powers", "mu+1_square", "p_mod_8"}};
  for (unsigned p = std::max(lo, 5u); p <= hi; ++p) {
    if (!is_prime(p)) continue;
    const auto s = supersingular_poly(p);
    const auto rc = rationality_checks(p);
    const auto crit = splitting_criterion_mod8(p);
    auto yn = [](bool b) { return std::string(b ? "yes" : "no"); };
    rows.push_back({std::to_string(p), std::to_string(s.phi.degree()), std::to_string((p - 1) / 2),
                    std::to_string(s.alpha), std::to_string(s.delta), std::to_string(s.eps),
                    std::to_string(s.phi1.degree()), yn(s.shape_ok), yn(s.simple_zeros),
                    yn(rc.phi_roots_in_fp2 && rc.phi1_tilde_roots_in_fp2), yn(rc.phi_roots_fourth_powers),
                    yn(crit.holds), std::to_string(p % 8)});
  }
  return format == "csv" ? csv(rows) : table(rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recursive towers from correspondences adapted to Fuchsian operators"};
  app.require_subcommand(1);

  RunOptions ro;
  auto* run_cmd = app.add_subcommand("run", "Validate a tower, enumerate levels and report the verdict");
  run_cmd->add_option("--fixture", ro.fixture, "Built-in tower: x0-2m, exaprop, x0-2-3m");
  run_cmd->add_option("--file", ro.file, "Tower definition (JSON)");
  run_cmd->add_option("--p", ro.p, "Characteristic for fixtures")->capture_default_str();
  run_cmd->add_option("--levels", ro.levels, "Level range a..b")->capture_default_str();
  run_cmd->add_option("--k", ro.k, "Extension degree of the enumeration (0 = minimal splitting degree)");
  run_cmd->add_option("--format", ro.format, "table, json or csv")
      ->check(CLI::IsMember({"table", "json", "csv"}))
      ->capture_default_str();
  run_cmd->add_option("--out", ro.out, "Write the report here instead of stdout");
  run_cmd->add_option("--threads", ro.guards.threads, "Enumeration threads")->check(CLI::Range(1u, 256u));
  run_cmd->add_option("--max-enum", ro.guards.max_enum, "Guard on (q+1) delta^m")->check(CLI::PositiveNumber);
  run_cmd->add_option("--max-stored", ro.guards.max_stored, "Tuples kept per level");
  run_cmd->add_option("--max-ext", ro.guards.max_ext, "Largest extension degree searched")
      ->check(CLI::Range(1u, 12u));
  run_cmd->add_option("--witness-depth", ro.guards.witness_depth, "Orbit depth for the witness search")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", ro.guards.seed, "Seed for sampled checks");

  auto* de = app.add_subcommand("de", "Fuchsian operator tools");
  de->require_subcommand(1);
  std::string de_fixture, de_file, de_a1, de_a2, de_f, de_format = "table";
  std::uint32_t de_p = 7;
  auto* analyze = de->add_subcommand("analyze", "Singular points and local exponents");
  auto* pull = de->add_subcommand("pullback", "Pull an operator back along a rational map");
  for (auto* c : {analyze, pull}) {
    c->add_option("--fixture", de_fixture, "gauss, j-line, x0-6 or lf");
    c->add_option("--file", de_file, "Use the operator of a tower definition");
    c->add_option("--a1", de_a1, "Coefficient of u'");
    c->add_option("--a2", de_a2, "Coefficient of u");
    c->add_option("--p", de_p, "Characteristic")->capture_default_str();
    c->add_option("--format", de_format, "table or csv")->check(CLI::IsMember({"table", "csv"}));
  }
  pull->add_option("--f", de_f, "The map, as \"[num]/[den]\"")->required();

  auto* ss = app.add_subcommand("ss", "Deuring and supersingular polynomial data");
  ss->require_subcommand(1);
  std::string ss_range = "5..31", ss_format = "table";
  auto* ss_tab = ss->add_subcommand("table", "One row per prime");
  ss_tab->add_option("--p-range", ss_range, "Primes a..b")->capture_default_str();
  ss_tab->add_option("--format", ss_format, "table or csv")->check(CLI::IsMember({"table", "csv"}));

  auto* modular = app.add_subcommand("modular", "Classical modular curve invariants");
  modular->require_subcommand(1);
  std::uint64_t genus_n = 1;
  auto* genus = modular->add_subcommand("genus", "Genus of X_0(N)");
  genus->add_option("N", genus_n, "Level")->required()->check(CLI::PositiveNumber);

  auto* fixture = app.add_subcommand("fixture", "Built-in fixtures");
  fixture->require_subcommand(1);
  std::string fx_name, fx_out;
  std::uint32_t fx_p = 7;
  auto* fx_export = fixture->add_subcommand("export", "Write a fixture as a tower definition");
  fx_export->add_option("--name", fx_name, "Fixture name")->required();
  fx_export->add_option("--p", fx_p, "Characteristic")->capture_default_str();
  fx_export->add_option("--out", fx_out, "Output file");
  auto* fx_list = fixture->add_subcommand("list", "List fixture names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    if (code == 0) return kOk;
    std::cerr << app.help();
    return kConfig;
  }

  try {
    if (*run_cmd) return run(ro);
    if (*analyze) {
      const FuchsianOperator L = operator_from(de_fixture, de_file, de_a1, de_a2, de_p);
      const auto rows = singularity_rows(L);
      if (de_format == "csv") {
        std::cout << csv(rows);
      } else {
        std::cout << "a1 = " << L.a1.to_string() << "\na2 = " << L.a2.to_string() << "\n" << table(rows);
      }
      return kOk;
    }
    if (*pull) {
      const FuchsianOperator L = operator_from(de_fixture, de_file, de_a1, de_a2, de_p);
      const FuchsianOperator P = pullback_operator(L, parse_ratfunc(L.field(), de_f));
      std::cout << "a1 = " << P.a1.to_string() << "\na2 = " << P.a2.to_string() << "\n"
                << "a1: " << format_ratfunc(P.a1) << "\na2: " << format_ratfunc(P.a2) << "\n"
                << table(singularity_rows(P));
      return kOk;
    }
    if (*ss_tab) {
      const auto [lo, hi] = parse_range(ss_range, "prime");
      std::cout << ss_table(lo, hi, ss_format);
      return kOk;
    }
    if (*genus) {
      const X0Invariants x = x0_invariants(genus_n);
      std::cout << to_string(x.genus) << "\n";
      std::cerr << "X_0(" << x.N << "): mu " << x.mu << ", nu2 " << x.nu2 << ", nu3 " << x.nu3 << ", cusps "
                << x.nu_inf << "\n";
      return kOk;
    }
    if (*fx_export) {
      emit(write_tower(fixture_definition(fx_name, fx_p)), fx_out);
      return kOk;
    }
    if (*fx_list) {
      for (const auto& n : tower_fixture_names()) std::cout << n << "  tower\n";
      for (const auto& n : operator_fixture_names()) std::cout << n << "  operator\n";
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "towerlab: parse error at " << e.what() << "\n";
    return kConfig;
  } catch (const CorrespondenceError& e) {
    std::cerr << "towerlab: " << e.what() << "\n";
    return kConfig;
  } catch (const GuardExceeded& e) {
    std::cerr << "towerlab: " << e.what() << "\n";
    return kGuard;
  } catch (const InvariantViolation& e) {
    std::cerr << "towerlab: invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const IrregularSingularity& e) {
    std::cerr << "towerlab: " << e.what() << "\n";
    return kConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "towerlab: " << e.what() << "\n";
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "towerlab: " << e.what() << "\n";
    return 1;
  }
  return kConfig;
}
