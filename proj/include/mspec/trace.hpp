#pragma once

#include <string>
#include <vector>

#include "mspec/formula.hpp"

namespace mspec {

// An ultimately periodic word: stem positions followed by a loop that repeats
// forever.  The loop must be non-empty.
struct LassoTrace {
  std::vector<PropSet> stem;
  std::vector<PropSet> loop;

  size_t size() const { return stem.size() + loop.size(); }
  size_t loop_start() const { return stem.size(); }
  const PropSet& at(size_t i) const {
    return i < stem.size() ? stem[i] : loop[i - stem.size()];
  }
  // Successor in the lasso shape: the last position wraps to the loop head.
  size_t succ(size_t i) const { return i + 1 < size() ? i + 1 : loop_start(); }

  friend bool operator==(const LassoTrace&, const LassoTrace&) = default;
};

// Evaluates an LTL formula over the infinite word described by the lasso.
// Derived operators are interpreted directly; path quantifiers throw.
bool eval_lasso(const Formula& f, const LassoTrace& trace);

// Text form: positions separated by ';', loop introduced by '|', props within
// a position separated by spaces or commas, '_' for an empty position.
// Example: "l1 ; l2 a1 ; _ | l3 ; l4".  The keyword spelling
// "stem: l1 ; l2 loop: l3" is accepted as an alias.
LassoTrace parse_lasso(const std::string& text);
std::string to_string(const LassoTrace& trace);

}  // namespace mspec
