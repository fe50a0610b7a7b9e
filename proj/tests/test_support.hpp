#pragma once

// Seeded generators shared by the property tests and the acceptance gate:
// random lassos over a fixed proposition pool and random formulas built from
// pattern instances plus a layer of combinators.  Everything is driven by
// SplitMix64 so failures reproduce from the seed alone.

#include <vector>

#include "mspec/formula.hpp"
#include "mspec/patterns.hpp"
#include "mspec/trace.hpp"
#include "mspec/worldgen.hpp"

namespace mspec::testing {

inline const std::vector<Prop>& prop_pool() {
  static const std::vector<Prop> pool = {make_prop("l1"), make_prop("l2"), make_prop("l3"),
                                         make_prop("cond"), make_prop("act")};
  return pool;
}

inline Prop rand_prop(SplitMix64& rng) {
  return prop_pool()[rng.below(prop_pool().size())];
}

// |stem| <= max_stem, 1 <= |loop| <= max_loop, each position holding each
// pool proposition with probability 0.4.
inline LassoTrace rand_lasso(SplitMix64& rng, size_t max_stem = 8, size_t max_loop = 8) {
  auto rand_positions = [&](size_t count) {
    std::vector<PropSet> out(count);
    for (auto& position : out)
      for (const auto& p : prop_pool())
        if (rng.below(10) < 4) position.insert(p);
    return out;
  };
  LassoTrace t;
  t.stem = rand_positions(rng.below(max_stem + 1));
  t.loop = rand_positions(1 + rng.below(max_loop));
  return t;
}

// A random catalog instance with n <= 3 locations and k in 1..3.
inline Formula rand_pattern_instance(SplitMix64& rng) {
  const auto& cat = catalog();
  const CatalogEntry& entry = cat[rng.below(cat.size())];
  std::vector<Prop> locs = {make_prop("l1"), make_prop("l2"), make_prop("l3")};
  rng.shuffle(locs);
  PatternParams p;
  if (entry.min_locations > 0) {
    const size_t n =
        entry.variable_locations ? 1 + rng.below(3) : static_cast<size_t>(entry.min_locations);
    p.locations.assign(locs.begin(), locs.begin() + n);
  }
  if (entry.needs_count) p.count = 1 + static_cast<int>(rng.below(3));
  if (entry.needs_trigger) p.trigger = rand_prop(rng);
  if (entry.needs_reaction) p.reaction = rand_prop(rng);
  if (entry.id == PatternId::StrictOrderedPatrolling) p.consecutive_allowed = rng.below(2) == 0;
  return instantiate_ltl(entry.id, p);
}

// The template map is not injective: a few instances coincide, symbol for
// symbol, with an instance of an earlier catalog entry, so no classifier can
// recover the original id from the formula alone.  The matcher resolves such
// ties by catalog order; this is the tie table (derivable from the templates):
//   SequencedVisit / OrderedVisit / StrictOrderedVisit at n=1
//       -> F l1, the Visit template (chains and orderings degenerate);
//   SequencedPatrolling at n=1 -> G F l1, the Patrolling template;
//   StrictOrderedPatrolling at n<=2 without the consecutive variation
//       -> OrderedPatrolling (the strict clause duplicates a wrap clause
//          and duplicate conjuncts are dropped);
//   LowerRestrictedAvoidance at k=1 -> F l1, the Visit template.
inline PatternId expected_recovery(PatternId id, const PatternParams& params) {
  const size_t n = params.locations.size();
  switch (id) {
    case PatternId::SequencedVisit:
    case PatternId::OrderedVisit:
    case PatternId::StrictOrderedVisit:
      return n == 1 ? PatternId::Visit : id;
    case PatternId::SequencedPatrolling:
      return n == 1 ? PatternId::Patrolling : id;
    case PatternId::StrictOrderedPatrolling:
      return n <= 2 && !params.consecutive_allowed ? PatternId::OrderedPatrolling : id;
    case PatternId::LowerRestrictedAvoidance:
      return params.count == 1 ? PatternId::Visit : id;
    default:
      return id;
  }
}

// A pattern instance, possibly wrapped in one extra combinator layer.  The
// layer is kept shallow on purpose: a single connective already exercises the
// non-template operator mix without blowing up the tableau closure.
inline Formula rand_formula(SplitMix64& rng) {
  Formula f = rand_pattern_instance(rng);
  switch (rng.below(10)) {
    case 0: return f_and(std::move(f), rand_pattern_instance(rng));
    case 1: return f_or(std::move(f), rand_pattern_instance(rng));
    case 2: return f_implies(rand_pattern_instance(rng), std::move(f));
    case 3: return f_not(std::move(f));
    case 4: return f_next(std::move(f));
    case 5: return f_until(f_atom(rand_prop(rng)), std::move(f));
    case 6: return f_wuntil(f_atom(rand_prop(rng)), std::move(f));
    default: return f;
  }
}

}  // namespace mspec::testing
