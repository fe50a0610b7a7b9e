#include "mspec/patterns.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

namespace mspec {

namespace {

struct NameRow {
  PatternId id;
  const char* name;
  const char* display;
};

constexpr NameRow kNames[] = {
    {PatternId::Visit, "Visit", "Visit"},
    {PatternId::SequencedVisit, "SequencedVisit", "Sequenced Visit"},
    {PatternId::OrderedVisit, "OrderedVisit", "Ordered Visit"},
    {PatternId::StrictOrderedVisit, "StrictOrderedVisit", "Strict Ordered Visit"},
    {PatternId::FairVisit, "FairVisit", "Fair Visit"},
    {PatternId::Patrolling, "Patrolling", "Patrolling"},
    {PatternId::SequencedPatrolling, "SequencedPatrolling", "Sequenced Patrolling"},
    {PatternId::OrderedPatrolling, "OrderedPatrolling", "Ordered Patrolling"},
    {PatternId::StrictOrderedPatrolling, "StrictOrderedPatrolling", "Strict Ordered Patrolling"},
    {PatternId::FairPatrolling, "FairPatrolling", "Fair Patrolling"},
    {PatternId::PastAvoidance, "PastAvoidance", "Past Avoidance"},
    {PatternId::GlobalAvoidance, "GlobalAvoidance", "Global Avoidance"},
    {PatternId::FutureAvoidance, "FutureAvoidance", "Future Avoidance"},
    {PatternId::UpperRestrictedAvoidance, "UpperRestrictedAvoidance",
     "Upper Restricted Avoidance"},
    {PatternId::LowerRestrictedAvoidance, "LowerRestrictedAvoidance",
     "Lower Restricted Avoidance"},
    {PatternId::ExactRestrictedAvoidance, "ExactRestrictedAvoidance",
     "Exact Restricted Avoidance"},
    {PatternId::InstantaneousReaction, "InstantaneousReaction", "Instantaneous Reaction"},
    {PatternId::DelayedReaction, "DelayedReaction", "Delayed Reaction"},
    {PatternId::PromptReaction, "PromptReaction", "Prompt Reaction"},
    {PatternId::BoundReaction, "BoundReaction", "Bound Reaction"},
    {PatternId::BoundDelay, "BoundDelay", "Bound Delay"},
    {PatternId::Wait, "Wait", "Wait"},
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string squash(const std::string& s) {
  std::string out;
  for (char c : s)
    if (c != ' ' && c != '-' && c != '_') out += c;
  return lower(out);
}

}  // namespace

std::string pattern_name(PatternId id) {
  for (const auto& row : kNames)
    if (row.id == id) return row.name;
  throw formula_error("unknown pattern id");
}

std::optional<PatternId> pattern_by_name(const std::string& name) {
  const std::string key = squash(name);
  for (const auto& row : kNames)
    if (squash(row.name) == key || squash(row.display) == key) return row.id;
  for (const auto& entry : catalog())
    for (const auto& alias : entry.aliases)
      if (squash(alias) == key) return entry.id;
  return std::nullopt;
}

PatternParams params_locations(std::vector<Prop> locations) {
  PatternParams p;
  p.locations = std::move(locations);
  return p;
}

PatternParams params_counted(Prop location, int count) {
  PatternParams p;
  p.locations = {std::move(location)};
  p.count = count;
  return p;
}

PatternParams params_trigger(Prop location, Prop trigger) {
  PatternParams p;
  p.locations = {std::move(location)};
  p.trigger = std::move(trigger);
  return p;
}

PatternParams params_reaction(Prop trigger, Prop reaction) {
  PatternParams p;
  p.trigger = std::move(trigger);
  p.reaction = std::move(reaction);
  return p;
}

namespace {

// Index wrap-around for the patrolling templates: the successor of the last
// location is the first one.
size_t wrap_succ(size_t i, size_t n) { return i + 1 < n ? i + 1 : 0; }

// Conjunction that drops structurally duplicate conjuncts, keeping the first
// occurrence (the patrolling wrap-around can repeat a conjunct verbatim).
Formula conjoin_unique(std::vector<Formula> conjuncts) {
  std::vector<Formula> kept;
  for (auto& c : conjuncts)
    if (std::find(kept.begin(), kept.end(), c) == kept.end()) kept.push_back(std::move(c));
  return f_and(std::move(kept));
}

// F(l1 & F(l2 & ... F(ln)))
Formula seq_chain(const std::vector<Prop>& ls) {
  Formula f = f_finally(f_atom(ls.back()));
  for (size_t i = ls.size() - 1; i-- > 0;) f = f_finally(f_and(f_atom(ls[i]), std::move(f)));
  return f;
}

void add_visit(std::vector<Formula>& out, const std::vector<Prop>& ls) {
  for (const auto& l : ls) out.push_back(f_finally(f_atom(l)));
}

// (!l_{i+1}) U l_i for i = 1..n-1
void add_order(std::vector<Formula>& out, const std::vector<Prop>& ls) {
  for (size_t i = 0; i + 1 < ls.size(); ++i)
    out.push_back(f_until(f_not(f_atom(ls[i + 1])), f_atom(ls[i])));
}

// (!l_i) U (l_i & X((!l_i) U l_{i+1})) for i = 1..n-1
void add_strict_visit(std::vector<Formula>& out, const std::vector<Prop>& ls) {
  for (size_t i = 0; i + 1 < ls.size(); ++i)
    out.push_back(f_until(
        f_not(f_atom(ls[i])),
        f_and(f_atom(ls[i]),
              f_next(f_until(f_not(f_atom(ls[i])), f_atom(ls[i + 1]))))));
}

// G(l_i -> X((!l_i) W l_{succ(i)})) for i = 1..n
void add_fair(std::vector<Formula>& out, const std::vector<Prop>& ls) {
  for (size_t i = 0; i < ls.size(); ++i) {
    const Prop& next = ls[wrap_succ(i, ls.size())];
    out.push_back(f_globally(f_implies(
        f_atom(ls[i]), f_next(f_wuntil(f_not(f_atom(ls[i])), f_atom(next))))));
  }
}

void add_patrolling(std::vector<Formula>& out, const std::vector<Prop>& ls) {
  for (const auto& l : ls) out.push_back(f_globally(f_finally(f_atom(l))));
}

// Guard of the patrolling wrap clauses.  The Fig.-3 style variation triggers
// only on exiting the location (l & X !l) so consecutive visits stay allowed.
Formula guard(const Prop& l, bool consecutive_allowed) {
  if (!consecutive_allowed) return f_atom(l);
  return f_and(f_atom(l), f_next(f_not(f_atom(l))));
}

// G(l_{succ(i)} -> X((!l_{succ(i)}) U l_i)) for i = 1..n
void add_ordered_patrol(std::vector<Formula>& out, const std::vector<Prop>& ls,
                        bool consecutive_allowed) {
  for (size_t i = 0; i < ls.size(); ++i) {
    const Prop& succ = ls[wrap_succ(i, ls.size())];
    out.push_back(f_globally(
        f_implies(guard(succ, consecutive_allowed),
                  f_next(f_until(f_not(f_atom(succ)), f_atom(ls[i]))))));
  }
}

// G(l_i -> X((!l_i) U l_{i+1})) for i = 1..n-1
void add_strict_patrol(std::vector<Formula>& out, const std::vector<Prop>& ls,
                       bool consecutive_allowed) {
  for (size_t i = 0; i + 1 < ls.size(); ++i)
    out.push_back(f_globally(
        f_implies(guard(ls[i], consecutive_allowed),
                  f_next(f_until(f_not(f_atom(ls[i])), f_atom(ls[i + 1]))))));
}

// l & X F(l & X F( ... l)) with m occurrences of l
Formula occurrence_chain(const Prop& l, int m) {
  Formula f = f_atom(l);
  for (int i = 1; i < m; ++i) f = f_and(f_atom(l), f_next(f_finally(std::move(f))));
  return f;
}

// (!l) U (l & X((!l) U (l & ... X(G !l)))) with k until-steps
Formula exact_chain(const Prop& l, int k) {
  if (k == 0) return f_globally(f_not(f_atom(l)));
  return f_until(f_not(f_atom(l)),
                 f_and(f_atom(l), f_next(exact_chain(l, k - 1))));
}

void need_locations(const PatternParams& p, size_t at_least, PatternId id) {
  if (p.locations.size() < at_least)
    throw formula_error(pattern_name(id) + " needs at least " + std::to_string(at_least) +
                        " location(s)");
}

void need_exact_locations(const PatternParams& p, size_t exactly, PatternId id) {
  if (p.locations.size() != exactly)
    throw formula_error(pattern_name(id) + " takes exactly " + std::to_string(exactly) +
                        " location(s)");
}

Prop need_trigger(const PatternParams& p, PatternId id) {
  if (!p.trigger) throw formula_error(pattern_name(id) + " needs a trigger proposition");
  return *p.trigger;
}

Prop need_reaction(const PatternParams& p, PatternId id) {
  if (!p.reaction) throw formula_error(pattern_name(id) + " needs a reaction proposition");
  return *p.reaction;
}

int need_count(const PatternParams& p, PatternId id) {
  if (p.count < 0) throw formula_error(pattern_name(id) + " needs a non-negative count");
  return p.count;
}

}  // namespace

Formula instantiate_ltl(PatternId id, const PatternParams& params) {
  std::vector<Formula> cs;
  const auto& ls = params.locations;
  switch (id) {
    case PatternId::Visit:
      need_locations(params, 1, id);
      add_visit(cs, ls);
      return conjoin_unique(std::move(cs));
    case PatternId::SequencedVisit:
      need_locations(params, 1, id);
      return seq_chain(ls);
    case PatternId::OrderedVisit:
      need_locations(params, 1, id);
      cs.push_back(seq_chain(ls));
      add_order(cs, ls);
      return conjoin_unique(std::move(cs));
    case PatternId::StrictOrderedVisit:
      need_locations(params, 1, id);
      cs.push_back(seq_chain(ls));
      add_order(cs, ls);
      add_strict_visit(cs, ls);
      return conjoin_unique(std::move(cs));
    case PatternId::FairVisit:
      need_locations(params, 1, id);
      add_visit(cs, ls);
      add_fair(cs, ls);
      return conjoin_unique(std::move(cs));
    case PatternId::Patrolling:
      need_locations(params, 1, id);
      add_patrolling(cs, ls);
      return conjoin_unique(std::move(cs));
    case PatternId::SequencedPatrolling:
      need_locations(params, 1, id);
      return f_globally(seq_chain(ls));
    case PatternId::OrderedPatrolling:
      need_locations(params, 1, id);
      cs.push_back(f_globally(seq_chain(ls)));
      add_order(cs, ls);
      add_ordered_patrol(cs, ls, false);
      return conjoin_unique(std::move(cs));
    case PatternId::StrictOrderedPatrolling:
      need_locations(params, 1, id);
      cs.push_back(f_globally(seq_chain(ls)));
      add_order(cs, ls);
      add_ordered_patrol(cs, ls, params.consecutive_allowed);
      add_strict_patrol(cs, ls, params.consecutive_allowed);
      return conjoin_unique(std::move(cs));
    case PatternId::FairPatrolling:
      need_locations(params, 1, id);
      add_patrolling(cs, ls);
      add_fair(cs, ls);
      return conjoin_unique(std::move(cs));
    case PatternId::PastAvoidance:
      need_exact_locations(params, 1, id);
      return f_until(f_not(f_atom(ls[0])), f_atom(need_trigger(params, id)));
    case PatternId::GlobalAvoidance:
      need_exact_locations(params, 1, id);
      return f_globally(f_not(f_atom(ls[0])));
    case PatternId::FutureAvoidance:
      need_exact_locations(params, 1, id);
      return f_globally(f_implies(f_atom(need_trigger(params, id)),
                                  f_globally(f_not(f_atom(ls[0])))));
    case PatternId::UpperRestrictedAvoidance:
      need_exact_locations(params, 1, id);
      // "at most k" forbids a (k+1)-th occurrence
      return f_not(f_finally(occurrence_chain(ls[0], need_count(params, id) + 1)));
    case PatternId::LowerRestrictedAvoidance:
      need_exact_locations(params, 1, id);
      if (need_count(params, id) == 0) return f_true();
      return f_finally(occurrence_chain(ls[0], params.count));
    case PatternId::ExactRestrictedAvoidance:
      need_exact_locations(params, 1, id);
      return exact_chain(ls[0], need_count(params, id));
    case PatternId::InstantaneousReaction:
      return f_globally(
          f_implies(f_atom(need_trigger(params, id)), f_atom(need_reaction(params, id))));
    case PatternId::DelayedReaction:
      return f_globally(f_implies(f_atom(need_trigger(params, id)),
                                  f_finally(f_atom(need_reaction(params, id)))));
    case PatternId::PromptReaction:
      return f_globally(f_implies(f_atom(need_trigger(params, id)),
                                  f_next(f_atom(need_reaction(params, id)))));
    case PatternId::BoundReaction:
      return f_globally(
          f_iff(f_atom(need_trigger(params, id)), f_atom(need_reaction(params, id))));
    case PatternId::BoundDelay:
      return f_globally(f_iff(f_atom(need_trigger(params, id)),
                              f_next(f_atom(need_reaction(params, id)))));
    case PatternId::Wait:
      need_exact_locations(params, 1, id);
      return f_until(f_atom(ls[0]), f_atom(need_trigger(params, id)));
  }
  throw formula_error("unknown pattern id");
}

Formula ctl_embed(const Formula& ltl) {
  std::vector<Formula> kids;
  kids.reserve(ltl.kids.size());
  for (const auto& k : ltl.kids) kids.push_back(ctl_embed(k));
  switch (ltl.op) {
    case Op::True: return f_true();
    case Op::False: return f_false();
    case Op::Atom: return ltl;
    case Op::Not: return f_not(std::move(kids[0]));
    case Op::And: return f_and(std::move(kids));
    case Op::Or: return f_or(std::move(kids));
    case Op::Implies: return f_implies(std::move(kids[0]), std::move(kids[1]));
    case Op::Iff: return f_iff(std::move(kids[0]), std::move(kids[1]));
    case Op::Next: return f_forall(f_next(std::move(kids[0])));
    case Op::Until: return f_forall(f_until(std::move(kids[0]), std::move(kids[1])));
    case Op::WeakUntil: {
      // A[p W q] has no SMV-friendly form here; use A[p U q] | AG p.
      // Sequenced so the copy of kids[0] happens before the move.
      Formula until_arm = f_forall(f_until(kids[0], std::move(kids[1])));
      Formula globally_arm = f_forall(f_globally(std::move(kids[0])));
      return f_or(std::move(until_arm), std::move(globally_arm));
    }
    case Op::Finally: return f_forall(f_finally(std::move(kids[0])));
    case Op::Globally: return f_forall(f_globally(std::move(kids[0])));
    case Op::ForAll:
    case Op::Exists:
      throw formula_error("ctl_embed expects an LTL formula");
  }
  throw formula_error("ctl_embed: unknown operator");
}

Formula instantiate_ctl(PatternId id, const PatternParams& params) {
  return ctl_embed(instantiate_ltl(id, params));
}

namespace {

std::vector<CatalogEntry> build_catalog() {
  std::vector<CatalogEntry> out;
  auto add = [&](PatternId id, const std::string& category, const std::string& intent,
                 std::vector<std::string> aliases, std::vector<PatternId> relations,
                 bool dashed) {
    CatalogEntry e;
    e.id = id;
    for (const auto& row : kNames)
      if (row.id == id) {
        e.name = row.name;
        e.display_name = row.display;
      }
    e.category = category;
    e.intent = intent;
    e.aliases = std::move(aliases);
    e.relations = std::move(relations);
    e.added_during_evaluation = dashed;
    out.push_back(std::move(e));
  };

  const std::string cov = "core-movement/coverage";
  const std::string sur = "core-movement/surveillance";
  const std::string cond = "avoidance/conditional";
  const std::string rest = "avoidance/restricted";
  const std::string react = "trigger/reaction";
  const std::string bind = "trigger/bind";
  const std::string waitc = "trigger/wait";

  add(PatternId::Visit, cov, "Visit a set of locations in an unspecified order.", {}, {},
      false);
  add(PatternId::SequencedVisit, cov,
      "Visit a set of locations in sequence, one after the other.", {},
      {PatternId::Visit}, false);
  add(PatternId::OrderedVisit, cov,
      "Visit a set of locations in sequence; a successor location is forbidden before its "
      "predecessor.",
      {}, {PatternId::SequencedVisit}, false);
  add(PatternId::StrictOrderedVisit, cov,
      "Ordered visit where, in addition, a predecessor is not visited multiple times "
      "before its successor.",
      {}, {PatternId::OrderedVisit}, false);
  add(PatternId::FairVisit, cov,
      "The difference among the number of times locations within a set are visited is at "
      "most one.",
      {}, {PatternId::Visit}, false);
  add(PatternId::Patrolling, sur,
      "Keep visiting a set of locations, but not in a particular order.", {}, {}, false);
  add(PatternId::SequencedPatrolling, sur,
      "Keep visiting a set of locations in sequence, one after the other.", {},
      {PatternId::Patrolling}, false);
  add(PatternId::OrderedPatrolling, sur,
      "Keep visiting a set of locations in sequence; a successor location is not visited "
      "again before its predecessor.",
      {}, {PatternId::SequencedPatrolling}, false);
  add(PatternId::StrictOrderedPatrolling, sur,
      "Keep visiting a set of locations following a strict ordering; after a predecessor "
      "is visited, it is not visited again before its successor.",
      {}, {PatternId::OrderedPatrolling}, false);
  add(PatternId::FairPatrolling, sur,
      "Keep visiting a set of locations and ensure that the difference among the number "
      "of times locations within a set are visited is at most one.",
      {}, {PatternId::Patrolling}, false);
  add(PatternId::PastAvoidance, cond, "A condition has been fulfilled in the past.", {}, {},
      false);
  add(PatternId::GlobalAvoidance, cond,
      "An avoidance condition globally holds throughout the mission.", {}, {}, false);
  add(PatternId::FutureAvoidance, cond,
      "After the occurrence of an event, avoidance has to be fulfilled.", {}, {}, false);
  add(PatternId::UpperRestrictedAvoidance, rest,
      "A restriction on the maximum number of occurrences is desired.", {}, {}, false);
  add(PatternId::LowerRestrictedAvoidance, rest,
      "A restriction on the minimum number of occurrences is desired.", {}, {}, false);
  add(PatternId::ExactRestrictedAvoidance, rest,
      "The number of occurrences desired is an exact number.", {},
      {PatternId::UpperRestrictedAvoidance, PatternId::LowerRestrictedAvoidance}, false);
  add(PatternId::InstantaneousReaction, react,
      "The occurrence of a stimulus instantaneously triggers a counteraction.", {}, {},
      false);
  add(PatternId::DelayedReaction, react,
      "The occurrence of a stimulus triggers a counteraction some time later.", {}, {},
      false);
  add(PatternId::PromptReaction, react,
      "The occurrence of a stimulus triggers a counteraction promptly, i.e. in the next "
      "time instant.",
      {"FastReaction", "fast reaction"}, {}, true);
  add(PatternId::BoundReaction, bind,
      "A counteraction must be performed every time and only when a specific location is "
      "entered.",
      {"binded reaction"}, {PatternId::InstantaneousReaction}, true);
  add(PatternId::BoundDelay, bind,
      "A counteraction must be performed, in the next time instant, every time and only "
      "when a specific location is entered.",
      {"binded delay"}, {PatternId::PromptReaction}, true);
  add(PatternId::Wait, waitc, "Inaction is desired till a stimulus occurs.", {}, {}, false);

  for (auto& e : out) {
    switch (e.id) {
      case PatternId::Visit:
      case PatternId::SequencedVisit:
      case PatternId::OrderedVisit:
      case PatternId::StrictOrderedVisit:
      case PatternId::FairVisit:
      case PatternId::Patrolling:
      case PatternId::SequencedPatrolling:
      case PatternId::OrderedPatrolling:
      case PatternId::StrictOrderedPatrolling:
      case PatternId::FairPatrolling:
        e.min_locations = 1;
        e.variable_locations = true;
        break;
      case PatternId::GlobalAvoidance:
        e.min_locations = 1;
        break;
      case PatternId::PastAvoidance:
      case PatternId::FutureAvoidance:
      case PatternId::Wait:
        e.min_locations = 1;
        e.needs_trigger = true;
        break;
      case PatternId::UpperRestrictedAvoidance:
      case PatternId::LowerRestrictedAvoidance:
      case PatternId::ExactRestrictedAvoidance:
        e.min_locations = 1;
        e.needs_count = true;
        break;
      case PatternId::InstantaneousReaction:
      case PatternId::DelayedReaction:
      case PatternId::PromptReaction:
      case PatternId::BoundReaction:
      case PatternId::BoundDelay:
        e.needs_trigger = true;
        e.needs_reaction = true;
        break;
    }
  }
  return out;
}

}  // namespace

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = build_catalog();
  return entries;
}

const CatalogEntry& lookup(PatternId id) {
  for (const auto& e : catalog())
    if (e.id == id) return e;
  throw formula_error("unknown pattern id");
}

std::string catalog_json() {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : catalog()) {
    nlohmann::json relations = nlohmann::json::array();
    for (auto r : e.relations) relations.push_back(pattern_name(r));
    arr.push_back({{"name", e.name},
                   {"display_name", e.display_name},
                   {"category", e.category},
                   {"intent", e.intent},
                   {"aliases", e.aliases},
                   {"relations", relations},
                   {"added_during_evaluation", e.added_during_evaluation},
                   {"min_locations", e.min_locations},
                   {"variable_locations", e.variable_locations},
                   {"needs_count", e.needs_count},
                   {"needs_trigger", e.needs_trigger},
                   {"needs_reaction", e.needs_reaction}});
  }
  return arr.dump(2);
}

}  // namespace mspec
