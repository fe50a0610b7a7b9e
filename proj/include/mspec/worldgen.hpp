#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mspec/patterns.hpp"
#include "mspec/ts.hpp"

namespace mspec {

// SplitMix64 (Steele, Lea, Flood: "Fast splittable pseudorandom number
// generators", OOPSLA 2014).  Chosen because it is tiny, well studied and
// trivially portable: scenario bytes must be identical on every platform for
// a fixed seed, so std::mt19937/std::shuffle (implementation-defined use of
// the stream) are out.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) without modulo bias.
  uint64_t below(uint64_t bound) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    uint64_t x;
    do {
      x = next();
    } while (x >= limit);
    return x % bound;
  }

  // Fisher-Yates, fixed iteration order for reproducibility.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }
};

// Movement relation between traversable cells.
enum class Variant { Adjacent, Directed };

// Directed-variant wrap-around edge.  The published rule is garbled, so both
// defensible readings are implemented: Lex connects the lexicographically
// (row-major) last traversable cell to the first; Literal follows the rule
// word by word (max row / max column of that row -> min row / min column of
// that row).  The two coincide on every grid -- tests assert it -- but both
// code paths are kept so the choice stays visible.  None omits the edge.
enum class WrapRule { Lex, Literal, None };

std::string to_string(Variant v);
std::string to_string(WrapRule w);
std::optional<Variant> variant_by_name(const std::string& name);
std::optional<WrapRule> wrap_by_name(const std::string& name);

// A seeded grid world: rows x cols cells, a fixed number of blocked cells,
// location identifiers l_0..l_{T-1} randomly assigned to the T traversable
// cells, random condition cells ("a box is present"), random action cells
// (where the robot may change color), and a random deployment cell.
struct GridScenario {
  int rows = 4;
  int cols = 4;
  std::vector<char> traversable;  // rows*cols, row-major
  std::vector<int> cell_of_loc;   // location id -> cell index
  std::vector<int> loc_of_cell;   // cell index -> location id, -1 if blocked
  Variant variant = Variant::Adjacent;
  WrapRule wrap = WrapRule::Lex;
  std::vector<int> cond_cells;  // sorted cell indices
  std::vector<int> act_cells;   // sorted cell indices
  int deploy_cell = 0;
  uint64_t seed = 0;
  int attempts = 0;  // rejection-sampling attempts consumed

  int num_cells() const { return rows * cols; }
  int num_traversable() const { return static_cast<int>(cell_of_loc.size()); }
  bool is_traversable(int cell) const { return traversable[cell] != 0; }
  bool is_cond(int cell) const;
  bool is_act(int cell) const;
};

// Deterministic generation: 4x4 grid, 12 traversable + 4 blocked cells,
// 4 cond and 4 act cells.  Seeds whose blocked-cell draw disconnects the
// traversable region (undirected connectivity for Adjacent, strong
// connectivity for Directed with a wrap edge) are rejected and redrawn from
// the same stream; the attempt count is recorded in the result.
GridScenario generate_scenario(uint64_t seed, Variant variant,
                               WrapRule wrap = WrapRule::Lex);

// Shrunk world for brute-force cross-checking: 3x3 grid, 5 traversable +
// 4 blocked cells (ids l_0..l_4 still cover the suite's l1..l4), 2 cond and
// 2 act cells.
GridScenario generate_reduced_scenario(uint64_t seed, Variant variant,
                                       WrapRule wrap = WrapRule::Lex);

// Movement edges cell -> cell under the scenario's variant, including the
// wrap edge, before action-state duplication and totality repair.
std::vector<std::pair<int, int>> movement_edges(const GridScenario& sc);

// The two wrap-edge readings (directed variant); see WrapRule.
std::pair<int, int> wrap_edge_lex(const GridScenario& sc);
std::pair<int, int> wrap_edge_literal(const GridScenario& sc);

// Kripke-structure view of a scenario.  Each traversable cell becomes a state
// labeled with its location proposition (plus cond where a box is present);
// each act cell gets a duplicated "acting" state that additionally carries
// act, reachable from its base state and from the movement predecessors of
// the cell; movement edges connect cell states; dead-end states (possible
// under Directed) are closed with self-loops to keep the relation total.
// The robot starts at the deployment cell's base state.
TransitionSystem to_transition_system(const GridScenario& sc);

// Plain-text serialization (grid map with id assignment, variant, wrap,
// cond/act/deploy cells, seed) and its inverse.
std::string to_text(const GridScenario& sc);
GridScenario scenario_from_text(const std::string& text);

// The experiment battery: 12 scenarios, seeds base..base+5 with adjacent
// movement and base+6..base+11 with directed movement.
std::vector<GridScenario> experiment_scenarios(uint64_t base_seed);

// Reduced worlds for the bounded brute-force oracle, count per variant.
std::vector<GridScenario> reduced_scenarios(uint64_t base_seed, int per_variant);

// One pattern occurrence inside a mission requirement.  Starred parts are the
// ones dropped by the relaxed variant of the experiment suite.
struct PatternUse {
  PatternId id;
  PatternParams params;
  bool starred = false;
};

// A mission requirement: an AND-composition of a core-movement, an avoidance
// and a trigger pattern (the experiment suite's shape).
struct MissionSpec {
  std::string name;     // "M1".."M10"
  std::string summary;  // e.g. "OrderedPatrolling, UpperRestrictedAvoidance, Wait"
  std::vector<PatternUse> parts;

  bool has_starred() const;
  Formula ltl() const;
  Formula ctl() const;
  Formula relaxed_ltl() const;  // starred parts removed
  Formula relaxed_ctl() const;
};

// The 10 fixed mission requirements of the experiment suite.  Core movement
// over l1, l2; restricted avoidance on l3 with bound 2; global/future/past
// avoidance on l3 relative to cond; Wait on l4 with cond; reactions bind act
// to cond.  Every one of the 22 catalog patterns appears at least once.
std::vector<MissionSpec> mission_suite();

}  // namespace mspec
