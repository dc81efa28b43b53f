#ifndef TOWERLAB_TOWER_IO_HPP
#define TOWERLAB_TOWER_IO_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "towerlab/modular.hpp"
#include "towerlab/tower.hpp"

namespace towerlab {

/// Malformed tower document.  line and column are 1-based; pointer is the
/// JSON pointer of the offending value, empty for syntax errors.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column, std::string pointer);
  std::size_t line;
  std::size_t column;
  std::string pointer;
};

// Tower documents are JSON objects:
//
//   {
//     "name": "x0-2m",                        optional
//     "p": 7,
//     "k": 0,                                 optional, 0 = minimal splitting degree
//     "g": "[0,4]/[1,2,1]",
//     "h": "[0,0,1]",
//     "S": [0, 1, "inf"],                     places: integer a (x - a), "inf", or a
//                                             monic irreducible coefficient list
//     "operator": {"a1": "...", "a2": "..."}, optional "a0" for a non-monic form
//     "phi": "[1,2,2,1]",
//     "pullback": {                           optional; the tower is then (g~, h~)
//       "f": "...", "component": [[i, j, c], ...],
//       "g_tilde": "...", "h_tilde": "...", "phi_map": "..."
//     },
//     "witness": 0,                           optional place
//     "modular_level": 6                      optional
//   }
//
// Rational functions are "numerator/denominator" with decimal coefficient
// lists, lowest degree first; a bare list is a polynomial.

struct TowerDefinition {
  std::string name;
  Field field;
  unsigned k = 0;
  RatFunc g;
  RatFunc h;
  std::vector<PlaceP1> S;
  FuchsianOperator op;
  RatFunc phi;
  std::optional<PullbackData> pullback;
  std::optional<PlaceP1> witness;
  std::optional<std::uint64_t> modular_level;
};

TowerDefinition parse_tower(std::string_view text);
TowerDefinition read_tower_file(const std::string& path);
/// Pretty-printed document that parse_tower reads back unchanged.
std::string write_tower(const TowerDefinition& def);

/// Validates the correspondence (and the pullback, if any); throws CorrespondenceError.
TowerSpec build_tower(const TowerDefinition& def, const Guards& guards);
/// Built-in fixture in document form.
TowerDefinition fixture_definition(const std::string& name, std::uint32_t p);

RatFunc parse_ratfunc(const Field& f, std::string_view s);
std::string format_ratfunc(const RatFunc& r);

struct InvariantCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct ExperimentReport {
  static constexpr const char* kSchemaVersion = "towerlab.report/1";

  std::string source;
  TowerDefinition def;
  TowerSpec spec;
  std::optional<WitnessOrbit> witness{};
  SplittingSet splitting{};
  MinimalSplittingField msf{};
  OptimalityReport optimality{};
  std::optional<long> level1_genus{};
  unsigned k = 0;  // extension degree of the enumerated levels
  std::vector<LevelData> levels{};
  std::vector<InvariantCheck> checks{};
  std::optional<std::string> guard_exhausted{};
  std::optional<X0Invariants> modular{};
  std::optional<ModularLimits> limits{};
  std::string verdict{};

  bool checks_ok() const;
  /// 0 success, 3 guard exhausted, 4 failed invariant check.
  int exit_code() const;
};

/// validate, splitting set, minimal splitting field, levels m_min..m_max, verdict.
/// k = 0 takes the document's k, then the minimal splitting degree.
ExperimentReport run_experiment(const TowerDefinition& def, const std::string& source, unsigned m_min,
                                unsigned m_max, unsigned k, const Guards& guards);

std::string report_json(const ExperimentReport& r);
std::string report_table(const ExperimentReport& r);
std::string report_csv(const ExperimentReport& r);

}  // namespace towerlab

#endif  // TOWERLAB_TOWER_IO_HPP
