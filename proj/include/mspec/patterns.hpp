#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mspec/formula.hpp"

namespace mspec {

enum class PatternId {
  Visit,
  SequencedVisit,
  OrderedVisit,
  StrictOrderedVisit,
  FairVisit,
  Patrolling,
  SequencedPatrolling,
  OrderedPatrolling,
  StrictOrderedPatrolling,
  FairPatrolling,
  PastAvoidance,
  GlobalAvoidance,
  FutureAvoidance,
  UpperRestrictedAvoidance,
  LowerRestrictedAvoidance,
  ExactRestrictedAvoidance,
  InstantaneousReaction,
  DelayedReaction,
  PromptReaction,
  BoundReaction,
  BoundDelay,
  Wait,
};

inline constexpr int kPatternCount = 22;

// "Visit", "StrictOrderedPatrolling", ... (the identifier spelling).
std::string pattern_name(PatternId id);
// Case-insensitive lookup by identifier, spaced name, or alias.
std::optional<PatternId> pattern_by_name(const std::string& name);

struct PatternParams {
  // Ordered location list for movement patterns; the single constrained
  // location for avoidance and Wait sits in locations[0].
  std::vector<Prop> locations;
  // Occurrence bound for the restricted-avoidance family.
  int count = 0;
  // Stimulus proposition (reactions, Wait, past/future avoidance).
  std::optional<Prop> trigger;
  // Counteraction proposition (reaction family).
  std::optional<Prop> reaction;
  // StrictOrderedPatrolling variation that admits runs of consecutive visits
  // by guarding on the instant a location is exited.
  bool consecutive_allowed = false;

  friend bool operator==(const PatternParams&, const PatternParams&) = default;
};

PatternParams params_locations(std::vector<Prop> locations);
PatternParams params_counted(Prop location, int count);
PatternParams params_trigger(Prop location, Prop trigger);
PatternParams params_reaction(Prop trigger, Prop reaction);

// Substitutes the parameters into the pattern's LTL template.  Duplicate
// conjuncts arising from index wrap-around are dropped (first occurrence
// kept).  Throws formula_error when the arity does not fit the pattern.
Formula instantiate_ltl(PatternId id, const PatternParams& params);

// Rewrites an LTL formula into its universal CTL reading: every temporal
// operator is wrapped in an A quantifier; W becomes A[. U .] | AG(.).
Formula ctl_embed(const Formula& ltl);

// instantiate_ltl followed by the universal embedding.
Formula instantiate_ctl(PatternId id, const PatternParams& params);

struct CatalogEntry {
  PatternId id;
  std::string name;          // identifier spelling, e.g. "StrictOrderedPatrolling"
  std::string display_name;  // spaced, e.g. "Strict Ordered Patrolling"
  std::string category;      // e.g. "core-movement/surveillance"
  std::string intent;
  std::vector<std::string> aliases;
  std::vector<PatternId> relations;  // patterns this one specializes/combines
  bool added_during_evaluation = false;
  // Parameter shape.
  int min_locations = 0;
  bool variable_locations = false;  // accepts n >= min_locations
  bool needs_count = false;
  bool needs_trigger = false;
  bool needs_reaction = false;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry& lookup(PatternId id);

// Machine-readable dump of the whole catalog (used by the CLI).
std::string catalog_json();

}  // namespace mspec
