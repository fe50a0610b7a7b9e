#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mspec/worldgen.hpp"

namespace mspec {

// One (scenario, mission) task of an experiment batch.
struct TaskRecord {
  int scenario = 0;          // index into the 12-scenario battery
  uint64_t scenario_seed = 0;
  std::string variant;       // "adjacent" | "directed"
  std::string mission;       // "M1".."M10"
  std::string patterns;      // mission summary, e.g. "FairVisit, ..."

  bool plan_found = false;     // exp4/exp6: existential verdict
  std::string plan;            // state-name rendering when a plan exists
  bool plan_validated = false; // exp4: plan re-checked under trace semantics
  bool relaxed_plan_found = false;  // exp6
  std::string relaxed_plan;         // exp6

  bool ltl_holds = false;  // exp5: universal LTL verdict
  bool ctl_holds = false;  // exp5: CTL verdict
  bool agree = false;      // exp5

  double ms = 0.0;  // wall-clock; excluded from determinism comparisons
};

// Per-mission tallies in the shape of the experiment result table: the
// number of scenarios where a plan was found / the requirement held (top)
// and where it was not / did not (bottom).
struct MissionTally {
  std::string mission;
  std::string patterns;
  int top = 0;
  int bottom = 0;
};

struct RunReport {
  std::string mode;  // "exp4" | "exp5" | "exp6"
  uint64_t base_seed = 0;
  std::vector<TaskRecord> records;
  std::vector<MissionTally> tally;

  // exp4 cross-validation and exp5/exp6 property counters.
  int plans_validated = 0;
  int plans_failed_validation = 0;
  int agreements = 0;
  int disagreements = 0;
  int monotone_violations = 0;  // exp6: full plan exists but relaxed does not
  int strict_gains = 0;         // exp6: only the relaxed mission has a plan

  // Machine-readable form.  Timing fields are reported but carry the only
  // nondeterministic bytes; every other field is a pure function of the seed.
  std::string to_json() const;
  // Human-readable summary table (timing-free, hence byte-deterministic).
  std::string to_table() const;
};

// Plan existence per (scenario, mission): searches the product of the
// scenario's transition system with the mission automaton, then re-checks
// every reported plan under the trace semantics.
RunReport run_exp4(uint64_t base_seed);

// Universal LTL verdict vs. the CTL embedding verdict per (scenario, mission).
RunReport run_exp5(uint64_t base_seed);

// Plan existence for the full vs. the relaxed (starred patterns dropped)
// mission, for the missions that carry a starred pattern.
RunReport run_exp6(uint64_t base_seed);

RunReport run_experiment(const std::string& mode, uint64_t base_seed);

}  // namespace mspec
