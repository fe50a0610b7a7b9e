#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mspec/formula.hpp"
#include "mspec/parse.hpp"
#include "mspec/trace.hpp"

namespace mspec {

// Kripke-style model: finite states, total transition relation, proposition
// labeling.  Infinite-word semantics require totality; use make_total() after
// hand-building one.
struct TransitionSystem {
  std::vector<PropSet> label;          // per state
  std::vector<std::vector<int>> succ;  // per state, deduplicated
  std::vector<int> initial;            // non-empty
  std::vector<std::string> names;      // optional; defaults to q0, q1, ...

  int num_states() const { return static_cast<int>(label.size()); }
  std::string state_name(int s) const;
};

// Adds self-loops to sink states; returns the states that needed one.
std::vector<int> make_total(TransitionSystem& ts);

// Checks shape invariants (sizes agree, indices in range, total, initial
// non-empty); throws std::invalid_argument on violation.
void validate(const TransitionSystem& ts);

// Ultimately periodic run: stem from an initial state, then a closed cycle.
struct Plan {
  std::vector<int> stem;  // may be empty
  std::vector<int> loop;  // non-empty

  friend bool operator==(const Plan&, const Plan&) = default;
};

// Projects the plan through the labeling.
LassoTrace plan_trace(const TransitionSystem& ts, const Plan& plan);
// Verifies the plan's edges against ts; throws std::invalid_argument.
void validate_plan(const TransitionSystem& ts, const Plan& plan);
std::string to_string(const TransitionSystem& ts, const Plan& plan);

struct Verdict {
  bool holds = false;
  std::optional<Plan> witness;  // plan for existential results, counterexample
                                // for universal ones
};

// Searches ts x BA(f) for an accepting lasso (nested depth-first search) and
// extracts it as a plan whose induced trace satisfies f.
std::optional<Plan> find_plan(const TransitionSystem& ts, const Formula& f);

// True iff every initial infinite path satisfies f; the witness, when false,
// is a counterexample plan satisfying !f.
Verdict holds_universally(const TransitionSystem& ts, const Formula& f);

// Per-state CTL labeling via bottom-up fixpoints (EX/EU/EG basis).
std::vector<char> ctl_states(const TransitionSystem& ts, const Formula& f);
// holds iff every initial state satisfies f.  Rejects LTL input.
Verdict check_ctl(const TransitionSystem& ts, const Formula& f);

// Exhaustive enumeration of lassos with |stem| <= max_stem, |loop| <= max_loop
// checked by eval_lasso — the independent oracle for find_plan on small worlds.
bool brute_force_plan_exists(const TransitionSystem& ts, const Formula& f, int max_stem,
                             int max_loop);

// Single-module SMV text: enumerated state variable, init/next tables, DEFINE
// per proposition, one LTLSPEC/CTLSPEC line per spec.  Byte-deterministic.
std::string emit_smv(const TransitionSystem& ts,
                     const std::vector<std::pair<Logic, Formula>>& specs);

// Model-free variant: every proposition becomes an unconstrained boolean VAR.
// Used when a mission is exported without a world attached.
std::string emit_smv_props(const PropSet& universe,
                           const std::vector<std::pair<Logic, Formula>>& specs);

}  // namespace mspec
