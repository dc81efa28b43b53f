#ifndef TOWERLAB_TOWER_HPP
#define TOWERLAB_TOWER_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "towerlab/bipoly.hpp"
#include "towerlab/fuchsian.hpp"
#include "towerlab/modular.hpp"
#include "towerlab/ratfunc.hpp"

namespace towerlab {

enum class Violation {
  kFieldMismatch,     // inputs over different fields, or not over a prime field
  kDegreeMismatch,    // deg g != deg h
  kInseparable,
  kWildRamification,
  kSingularPreimage,  // g^-1(S) != h^-1(S)
  kSingularSet,       // S misses a singularity of the operator
  kBranchOutsideS,    // g or h ramified outside the preimage of S
  kNotSolution,       // phi is not annihilated by the operator
  kNotAdapted,
  kNotDisjoint,       // common left factor found by the Moebius search
  kComponentNotFactor,    // pullback component does not divide C(f(A), f(B))
  kComponentNotVanishing, // pullback component nonzero at (h~, g~)
  kDiagramNotCommuting,   // g o phi != f o g~ or h o phi != f o h~
};

std::string to_string(Violation v);

struct ViolationRecord {
  Violation kind;
  std::string detail;
};

class CorrespondenceError : public std::invalid_argument {
 public:
  explicit CorrespondenceError(std::vector<ViolationRecord> v);
  std::vector<ViolationRecord> violations;
};

class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A validated pair of covers adapted to an operator with a known solution.
struct Correspondence {
  RatFunc g;
  RatFunc h;
  std::vector<PlaceP1> S;
  FuchsianOperator op;
  RatFunc phi;

  unsigned delta = 0;
  std::vector<PlaceP1> frak_s;  // g^-1(S), sorted
  RatFunc twist;                // B with twist(op_g, B) = op_h
  bool disjoint_checked = false;  // false when the Moebius search was skipped

  const Field& field() const { return g.field(); }
  /// Number of geometric points of g^-1(S).
  std::uint64_t frak_s_size() const;
};

struct ValidationResult {
  std::optional<Correspondence> value;
  std::vector<ViolationRecord> violations;
};

ValidationResult check_correspondence(const RatFunc& g, const RatFunc& h, const std::vector<PlaceP1>& S,
                                      const FuchsianOperator& op, const RatFunc& phi);
/// Throws CorrespondenceError listing every violated assumption.
Correspondence validate_correspondence(const RatFunc& g, const RatFunc& h, const std::vector<PlaceP1>& S,
                                       const FuchsianOperator& op, const RatFunc& phi);

/// Searches for a Moebius map s with h = g o s over F_{p^j}, j <= max_ext.
/// For prime deg g this decides whether g and h have a common left factor.
struct DisjointnessReport {
  bool searched = false;
  bool disjoint = true;
  std::optional<RatFunc> mobius;  // coefficients over the field it was found in
  unsigned ext_searched = 0;
};
DisjointnessReport disjointness_search(const RatFunc& g, const RatFunc& h, unsigned max_ext = 2);

struct Guards {
  std::uint64_t max_enum = 50'000'000;  // bound on (q + 1) * delta^m
  std::uint64_t max_stored = 200'000;   // tuples kept in LevelData::points
  unsigned max_ext = 4;
  unsigned witness_depth = 64;
  unsigned threads = 1;
  std::uint64_t seed = 20240601;
};

struct TowerSpec {
  Correspondence corr;
  unsigned k = 0;  // extension degree for level enumeration; 0 selects the minimal splitting degree
  std::optional<PlaceP1> witness;
  std::optional<std::uint64_t> modular_level;  // N when the base is X_0(N)
  Guards guards;
};

struct WitnessOrbit {
  PlaceP1 start;
  std::vector<PlaceP1> orbit;  // start, x1, x2, ... until the first repeat
  bool periodic = false;       // orbit closed up, so every level is covered
};

/// A place of X_0 whose forward orbit under "h-preimage of g" stays totally
/// ramified in h with e_g prime to delta.  Tries `preferred` first.
std::optional<WitnessOrbit> totally_branched_witness(const Correspondence& c, unsigned depth = 64,
                                                     const std::optional<PlaceP1>& preferred = std::nullopt);

struct SplittingSet {
  std::vector<PlaceP1> frak_t;  // zeros of phi o g of order prime to p, outside frak_s
  std::vector<PlaceP1> T;       // g(frak_t)
  std::uint64_t frak_t_size = 0;  // geometric points
  bool h_form_agrees = false;
  bool images_agree = false;      // g(frak_t) == h(frak_t)
};
/// Throws InvariantViolation when the g-form and h-form disagree.
SplittingSet splitting_set(const Correspondence& c);

/// g(X_0) + (#frak_s - 2)/2 with X_0 the projective line.
Rational genus_bound(const Correspondence& c);
/// Genus of y^2 = g(x) when h = x^2.  Throws std::invalid_argument otherwise.
long level1_kummer_genus(const Correspondence& c);

struct DegreeOneReport {
  bool holds = false;
  int deg_a = 0;
  int deg_b = 0;
  unsigned samples = 0;
  unsigned sample_failures = 0;
  std::uint64_t seed = 0;
};
DegreeOneReport degree_one_check(const Correspondence& c, std::uint64_t seed, unsigned samples = 24);

struct MinimalSplittingField {
  std::optional<unsigned> k;  // absent: not found within k_max
  unsigned k_max = 0;
  std::vector<unsigned> searched;  // degrees examined by direct fiber computation
  bool certificate_used = false;   // rational-image criterion applied
  std::optional<unsigned> certificate_k;
  std::vector<std::string> singular_images;  // points of frak_t over singular points of C
  DegreeOneReport degree_one;
};
MinimalSplittingField minimal_splitting_field(const Correspondence& c, unsigned k_max, std::uint64_t seed = 20240601);

/// Points of the projective line over F_{p^k}, indexed 0..q-1 by residue and q for infinity.
struct LevelData {
  unsigned m = 0;
  unsigned k = 0;
  std::uint64_t count = 0;        // tuples (x_0..x_m) with h(x_i) = g(x_{i-1})
  std::uint64_t split_count = 0;  // tuples with x_0 in frak_t
  std::uint64_t above_s = 0;      // tuples with x_0 in frak_s
  std::uint64_t frak_t_rational = 0;  // points of frak_t over F_{p^k}
  bool fibers_full = true;  // every point of frak_t has delta rational successors
  bool s_closure = true;
  bool t_closure = true;
  bool branch_confined = true;
  std::vector<std::vector<std::uint32_t>> points;  // first guards.max_stored tuples
  bool truncated = false;
};

LevelData enumerate_level(const TowerSpec& t, unsigned m, unsigned k);
/// Same, reusing a splitting set computed for this correspondence.
LevelData enumerate_level(const TowerSpec& t, unsigned m, unsigned k, const SplittingSet& s);
/// Every tuple of P^1(F_{p^k})^(m+1) tested directly.
std::uint64_t brute_force_count(const Correspondence& c, unsigned m, unsigned k);

struct OptimalityReport {
  bool good = false;
  bool asgood_hypothesis = false;  // ord_P(phi) != 0 mod p with g^-1(P) outside frak_s
  bool optimal = false;
  std::optional<std::uint64_t> q;
  std::uint64_t nu_lower = 0;
  Rational genus_bound;
  std::optional<Rational> lambda_lower;
};
OptimalityReport optimality_report(const Correspondence& c, const SplittingSet& s,
                                   const MinimalSplittingField& msf);
OptimalityReport optimality_report(const TowerSpec& t);

struct PullbackData {
  RatFunc f;
  BiPoly component;  // a on the h side, b on the g side, as in implicitize
  RatFunc g_tilde;
  RatFunc h_tilde;
  RatFunc phi_map;
};

struct PullbackReport {
  bool divides = false;     // component | numerator of C(f(A), f(B))
  bool vanishes = false;    // component(h~, g~) = 0
  bool commutes = false;    // g o phi = f o g~ and h o phi = f o h~
  bool adapted = false;     // (g~, h~) adapted to the pulled-back operator
  std::optional<Correspondence> pulled_back;
  std::vector<ViolationRecord> violations;
  bool ok() const { return divides && vanishes && commutes && adapted && pulled_back.has_value(); }
};
PullbackReport verify_pullback_correspondence(const Correspondence& c, const PullbackData& d);

/// True when f has no branch point outside the given places.
bool unbranched_outside(const RatFunc& f, const std::vector<PlaceP1>& places);

}  // namespace towerlab

#endif  // TOWERLAB_TOWER_HPP
