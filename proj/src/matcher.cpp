#include "mspec/matcher.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "mspec/emit.hpp"
#include "mspec/parse.hpp"

namespace mspec {

Formula canonicalize(const Formula& f) {
  if (f.kids.empty()) return f;
  std::vector<Formula> kids;
  kids.reserve(f.kids.size());
  for (const auto& k : f.kids) kids.push_back(canonicalize(k));
  if (f.op == Op::And || f.op == Op::Or) {
    Formula out = f.op == Op::And ? f_and(std::move(kids)) : f_or(std::move(kids));
    if (out.op != f.op) return out;  // constructor collapsed it
    std::sort(out.kids.begin(), out.kids.end());
    out.kids.erase(std::unique(out.kids.begin(), out.kids.end()), out.kids.end());
    if (out.kids.size() == 1) return std::move(out.kids.front());
    return out;
  }
  Formula out = f;
  out.kids = std::move(kids);
  return out;
}

namespace {

// Bound on the occurrence count searched for the restricted-avoidance family,
// and on the location-list arity enumerated per pattern.  Both are small on
// purpose: templates are linear in their parameters, and corpus formulas stay
// far below these sizes.
constexpr int kMaxCount = 8;
constexpr int kMaxArity = 7;

Formula instantiate(PatternId id, const PatternParams& params, bool ctl) {
  return canonicalize(ctl ? instantiate_ctl(id, params) : instantiate_ltl(id, params));
}

// Enumerates candidate parameter bindings for one pattern over a fixed atom
// pool and feeds each to `try_one` until it reports a hit.  `exact_cover`
// restricts location lists to permutations of the whole pool (whole-formula
// matching: the instance must mention every atom of the subject).
bool enumerate_bindings(const CatalogEntry& entry, const std::vector<Prop>& pool,
                        bool exact_cover,
                        const std::function<bool(const PatternParams&)>& try_one) {
  const int a = static_cast<int>(pool.size());

  if (entry.variable_locations) {
    // Movement family: ordered duplicate-free location lists.
    std::vector<Prop> list;
    std::vector<char> used(pool.size(), 0);
    const int lo = exact_cover ? a : entry.min_locations;
    const int hi = exact_cover ? a : std::min(a, kMaxArity);
    std::function<bool(int)> rec = [&](int want) {
      if (static_cast<int>(list.size()) == want) {
        PatternParams p = params_locations(list);
        if (try_one(p)) return true;
        if (entry.id == PatternId::StrictOrderedPatrolling) {
          p.consecutive_allowed = true;  // the published variation
          if (try_one(p)) return true;
        }
        return false;
      }
      for (size_t i = 0; i < pool.size(); ++i) {
        if (used[i]) continue;
        used[i] = 1;
        list.push_back(pool[i]);
        if (rec(want)) return true;
        list.pop_back();
        used[i] = 0;
      }
      return false;
    };
    for (int n = std::max(1, lo); n <= hi; ++n)
      if (rec(n)) return true;
    return false;
  }

  if (entry.needs_trigger && entry.needs_reaction) {
    if (exact_cover && a != 2) return false;
    for (const Prop& t : pool)
      for (const Prop& r : pool) {
        if (t == r) continue;
        if (try_one(params_reaction(t, r))) return true;
      }
    return false;
  }

  if (entry.needs_trigger) {  // past/future avoidance, wait
    if (exact_cover && a != 2) return false;
    for (const Prop& l : pool)
      for (const Prop& t : pool) {
        if (l == t) continue;
        if (try_one(params_trigger(l, t))) return true;
      }
    return false;
  }

  if (entry.needs_count) {
    if (exact_cover && a != 1) return false;
    for (const Prop& l : pool)
      for (int k = 1; k <= kMaxCount; ++k)
        if (try_one(params_counted(l, k))) return true;
    return false;
  }

  // Global avoidance: single location.
  if (exact_cover && a != 1) return false;
  for (const Prop& l : pool)
    if (try_one(params_locations({l}))) return true;
  return false;
}

std::vector<Prop> atom_pool(const Formula& f) {
  const PropSet set = atoms(f);
  return {set.begin(), set.end()};
}

// Top-level conjunct view of a canonical formula.
std::vector<Formula> conjuncts(const Formula& canon) {
  if (canon.op == Op::And) return canon.kids;
  return {canon};
}

// Whole-formula unification: first catalog pattern (in order) whose
// instantiation canonicalizes to `canon`.
std::optional<MatchBinding> match_whole(const Formula& canon, bool ctl) {
  const std::vector<Prop> pool = atom_pool(canon);
  if (pool.empty() || static_cast<int>(pool.size()) > kMaxArity) return std::nullopt;
  for (const auto& entry : catalog()) {
    std::optional<MatchBinding> hit;
    enumerate_bindings(entry, pool, /*exact_cover=*/true,
                       [&](const PatternParams& params) {
                         if (instantiate(entry.id, params, ctl) != canon) return false;
                         hit = MatchBinding{entry.id, params};
                         return true;
                       });
    if (hit) return hit;
  }
  return std::nullopt;
}

// Removes `parts` from the sorted vector `remaining` if every element is
// present; returns false (and leaves `remaining` alone) otherwise.
bool consume(std::vector<Formula>& remaining, const std::vector<Formula>& parts) {
  if (!std::includes(remaining.begin(), remaining.end(), parts.begin(), parts.end(),
                     [](const Formula& x, const Formula& y) { return x < y; }))
    return false;
  std::vector<Formula> rest;
  std::set_difference(remaining.begin(), remaining.end(), parts.begin(), parts.end(),
                      std::back_inserter(rest),
                      [](const Formula& x, const Formula& y) { return x < y; });
  remaining = std::move(rest);
  return true;
}

}  // namespace

MatchResult match(const Formula& f) {
  const bool ctl = !is_ltl(f);
  const Formula canon = canonicalize(f);
  MatchResult result;

  // (1) the whole formula as one template instance.
  if (auto whole = match_whole(canon, ctl)) {
    result.outcome = MatchResult::Outcome::SinglePattern;
    result.matches.push_back(std::move(*whole));
    return result;
  }

  // (2) partition the top-level conjuncts into template instances.  Greedy in
  // catalog order; templates may span several conjuncts (e.g. OrderedVisit).
  if (canon.op == Op::And) {
    std::vector<Formula> remaining = conjuncts(canon);  // sorted by canonicalize
    bool progress = true;
    while (progress && !remaining.empty()) {
      progress = false;
      const Formula rest_formula = f_and(remaining);
      const std::vector<Prop> pool = atom_pool(rest_formula);
      if (pool.empty() || static_cast<int>(pool.size()) > kMaxArity) break;
      for (const auto& entry : catalog()) {
        const bool hit = enumerate_bindings(
            entry, pool, /*exact_cover=*/false, [&](const PatternParams& params) {
              const Formula inst = instantiate(entry.id, params, ctl);
              if (!consume(remaining, conjuncts(inst))) return false;
              result.matches.push_back(MatchBinding{entry.id, params});
              return true;
            });
        if (hit) {
          progress = true;
          break;
        }
      }
    }
    if (!result.matches.empty()) {
      result.outcome = MatchResult::Outcome::Conjunction;
      result.residue = std::move(remaining);
      return result;
    }
  }

  // (3) statements about the initial state carry no temporal operator.
  if (is_temporal_free(f)) {
    result.outcome = MatchResult::Outcome::Init;
    return result;
  }

  result.outcome = MatchResult::Outcome::NonMatching;
  return result;
}

namespace {

std::string binding_str(const MatchBinding& b) {
  const CatalogEntry& entry = lookup(b.id);
  std::string out = entry.name + "[";
  bool first = true;
  auto sep = [&]() {
    if (!first) out += ", ";
    first = false;
  };
  for (const auto& l : b.params.locations) {
    sep();
    out += l.str();
  }
  if (entry.needs_count) {
    sep();
    out += "k=" + std::to_string(b.params.count);
  }
  if (b.params.trigger && entry.needs_trigger) {
    sep();
    out += b.params.trigger->str();
  }
  if (b.params.reaction) {
    sep();
    out += b.params.reaction->str();
  }
  if (b.params.consecutive_allowed) out += ", consecutive";
  return out + "]";
}

std::string outcome_str(const MatchResult& r) {
  switch (r.outcome) {
    case MatchResult::Outcome::SinglePattern:
      return binding_str(r.matches.front());
    case MatchResult::Outcome::Conjunction: {
      std::string out = "conjunction(";
      for (size_t i = 0; i < r.matches.size(); ++i)
        out += (i ? ", " : "") + binding_str(r.matches[i]);
      out += ")";
      if (!r.residue.empty()) {
        out += " residue:";
        for (const auto& g : r.residue) out += " {" + emit(g, Format::Plain) + "}";
      }
      return out;
    }
    case MatchResult::Outcome::Init:
      return "init";
    default:
      return "non-matching";
  }
}

}  // namespace

CorpusReport match_corpus(const std::string& text) {
  CorpusReport report;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = raw.substr(0, raw.find('#'));
    const auto last = line.find_last_not_of(" \t\r");
    line = last == std::string::npos ? "" : line.substr(0, last + 1);
    if (line.empty()) continue;

    CorpusLine entry;
    entry.line = lineno;
    entry.text = line;
    try {
      Formula f;
      try {
        f = parse_formula(line, Logic::Ltl);
      } catch (const parse_error&) {
        f = parse_formula(line, Logic::Ctl);  // quantified input
      }
      entry.parsed = true;
      entry.result = match(f);
    } catch (const std::exception& e) {
      entry.error = e.what();
      ++report.error_count;
    }

    if (entry.parsed) {
      switch (entry.result.outcome) {
        case MatchResult::Outcome::Init:
          ++report.init_count;
          break;
        case MatchResult::Outcome::NonMatching:
          ++report.non_matching_count;
          break;
        default:
          for (const auto& b : entry.result.matches)
            ++report.histogram[lookup(b.id).name];
          if (!entry.result.residue.empty()) ++report.non_matching_count;
          break;
      }
    }
    report.lines.push_back(std::move(entry));
  }
  return report;
}

std::string report_text(const CorpusReport& report) {
  std::ostringstream out;
  out << "pattern match report\n";
  out << "a \"combination of patterns\" is read as a partition of the top-level\n"
         "conjuncts into template instances (syntactic matching modulo\n"
         "associativity/commutativity/idempotence; no semantic rewriting)\n\n";
  for (const auto& line : report.lines) {
    out << "  " << line.line << ": " << line.text << "\n";
    if (!line.parsed)
      out << "     -> parse error: " << line.error << "\n";
    else
      out << "     -> " << outcome_str(line.result) << "\n";
  }
  out << "\nhistogram:\n";
  for (const auto& [name, count] : report.histogram)
    out << "  " << name << " " << count << "\n";
  out << "  init " << report.init_count << "\n";
  out << "  non-matching " << report.non_matching_count << "\n";
  out << "  parse-errors " << report.error_count << "\n";
  return out.str();
}

}  // namespace mspec
