#pragma once

#include <string>
#include <vector>

#include "mspec/formula.hpp"
#include "mspec/trace.hpp"

namespace mspec {

// Conjunction of literals an edge requires of the position it consumes.
struct EdgeLabel {
  PropSet pos;  // must hold
  PropSet neg;  // must not hold

  bool matches(const PropSet& props) const;
  friend bool operator==(const EdgeLabel&, const EdgeLabel&) = default;
  friend auto operator<=>(const EdgeLabel&, const EdgeLabel&) = default;
};

struct BuchiEdge {
  EdgeLabel label;
  int dst = 0;

  friend bool operator==(const BuchiEdge&, const BuchiEdge&) = default;
  friend auto operator<=>(const BuchiEdge&, const BuchiEdge&) = default;
};

// Transition-labeled omega-automaton with generalized (state-set) acceptance:
// a run is accepting when it visits every acceptance set infinitely often.
// Zero acceptance sets means every infinite run accepts.
struct GeneralizedBuchi {
  std::vector<std::vector<BuchiEdge>> edges;  // indexed by state
  std::vector<int> initial;
  std::vector<std::vector<int>> accept;  // each a sorted state list

  int num_states() const { return static_cast<int>(edges.size()); }
};

// Same shape with exactly one acceptance set.
using BuchiAutomaton = GeneralizedBuchi;

// Tableau translation (expand-node over the NNF closure) followed by a
// bisimulation quotient.  One acceptance set per until-subformula.
// Throws formula_error on CTL input.
GeneralizedBuchi ltl_to_gba(const Formula& f);

// Counter-based degeneralization; language preserved, k = 0 becomes an
// all-accepting copy and k = 1 is returned unchanged.
BuchiAutomaton degeneralize(const GeneralizedBuchi& g);

// degeneralize(ltl_to_gba(f))
BuchiAutomaton ltl_to_buchi(const Formula& f);

// True iff the omega-word of t is accepted: product of the lasso graph with
// the automaton plus accepting-SCC detection.  Works for generalized and
// single-set acceptance alike.
bool accepts_lasso(const GeneralizedBuchi& b, const LassoTrace& t);

// HOA v1 text (states, Start:, Acceptance:, labeled edges).
std::string to_hoa(const GeneralizedBuchi& b);

}  // namespace mspec
