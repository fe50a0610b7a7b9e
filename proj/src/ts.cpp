#include "mspec/ts.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "mspec/buchi.hpp"
#include "mspec/emit.hpp"

namespace mspec {

std::string TransitionSystem::state_name(int s) const {
  if (s < static_cast<int>(names.size()) && !names[s].empty()) return names[s];
  return "q" + std::to_string(s);
}

std::vector<int> make_total(TransitionSystem& ts) {
  std::vector<int> looped;
  for (int s = 0; s < ts.num_states(); ++s) {
    if (ts.succ[s].empty()) {
      ts.succ[s].push_back(s);
      looped.push_back(s);
    }
  }
  return looped;
}

void validate(const TransitionSystem& ts) {
  const int n = ts.num_states();
  if (static_cast<int>(ts.succ.size()) != n)
    throw std::invalid_argument("labeling and successor tables disagree");
  if (ts.initial.empty()) throw std::invalid_argument("no initial state");
  auto in_range = [n](int s) { return s >= 0 && s < n; };
  for (int s : ts.initial)
    if (!in_range(s)) throw std::invalid_argument("initial state out of range");
  for (int s = 0; s < n; ++s) {
    if (ts.succ[s].empty()) throw std::invalid_argument("transition relation not total");
    for (int t : ts.succ[s])
      if (!in_range(t)) throw std::invalid_argument("successor out of range");
  }
}

LassoTrace plan_trace(const TransitionSystem& ts, const Plan& plan) {
  LassoTrace t;
  for (int s : plan.stem) t.stem.push_back(ts.label[s]);
  for (int s : plan.loop) t.loop.push_back(ts.label[s]);
  return t;
}

void validate_plan(const TransitionSystem& ts, const Plan& plan) {
  if (plan.loop.empty()) throw std::invalid_argument("plan loop is empty");
  auto connected = [&](int a, int b) {
    const auto& s = ts.succ[a];
    return std::find(s.begin(), s.end(), b) != s.end();
  };
  const int first = plan.stem.empty() ? plan.loop.front() : plan.stem.front();
  if (std::find(ts.initial.begin(), ts.initial.end(), first) == ts.initial.end())
    throw std::invalid_argument("plan does not start in an initial state");
  std::vector<int> all = plan.stem;
  all.insert(all.end(), plan.loop.begin(), plan.loop.end());
  for (size_t i = 0; i + 1 < all.size(); ++i)
    if (!connected(all[i], all[i + 1])) throw std::invalid_argument("plan edge missing");
  if (!connected(all.back(), plan.loop.front()))
    throw std::invalid_argument("plan loop does not close");
}

std::string to_string(const TransitionSystem& ts, const Plan& plan) {
  std::string out;
  for (size_t i = 0; i < plan.stem.size(); ++i) {
    if (i) out += " ; ";
    out += ts.state_name(plan.stem[i]);
  }
  out += plan.stem.empty() ? "| " : " | ";
  for (size_t i = 0; i < plan.loop.size(); ++i) {
    if (i) out += " ; ";
    out += ts.state_name(plan.loop[i]);
  }
  return out;
}

namespace {

// Nested depth-first search for an accepting lasso in ts x BA(f), iterative to
// keep the stack flat on large products.
struct ProductSearch {
  const TransitionSystem& ts;
  const BuchiAutomaton& ba;
  const int nq;
  std::vector<char> blue_done, on_path, red_done, q_accepting;
  std::vector<int> path;  // current blue DFS path (product node ids)

  ProductSearch(const TransitionSystem& ts_, const BuchiAutomaton& ba_)
      : ts(ts_), ba(ba_), nq(ba_.num_states()) {
    const size_t total = static_cast<size_t>(ts.num_states()) * nq;
    blue_done.assign(total, 0);
    on_path.assign(total, 0);
    red_done.assign(total, 0);
    q_accepting.assign(nq, 0);
    for (int q : ba.accept[0]) q_accepting[q] = 1;
  }

  int node_id(int s, int q) const { return s * nq + q; }

  std::vector<int> successors(int node) const {
    const int s = node / nq, q = node % nq;
    std::vector<int> out;
    for (const auto& e : ba.edges[q]) {
      if (!e.label.matches(ts.label[s])) continue;
      for (int s2 : ts.succ[s]) out.push_back(node_id(s2, e.dst));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  // Red search from an accepting seed; returns the path-member node it hits
  // (cycle witness) and fills parent links, or -1.
  int red_search(int seed, std::vector<int>& red_parent_keys,
                 std::vector<int>& red_parent_vals) {
    struct Frame {
      int v;
      std::vector<int> succs;
      size_t next = 0;
    };
    std::vector<Frame> frames;
    frames.push_back({seed, successors(seed), 0});
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.next >= f.succs.size()) {
        frames.pop_back();
        continue;
      }
      const int w = f.succs[f.next++];
      if (on_path[w]) {
        red_parent_keys.push_back(w);
        red_parent_vals.push_back(f.v);
        return w;
      }
      if (red_done[w]) continue;
      red_done[w] = 1;
      red_parent_keys.push_back(w);
      red_parent_vals.push_back(f.v);
      frames.push_back({w, successors(w), 0});
    }
    return -1;
  }

  std::optional<Plan> extract(int hit, const std::vector<int>& red_parent_keys,
                              const std::vector<int>& red_parent_vals, int seed) {
    // Loop = path segment from `hit` to the seed, then the red path back.
    auto parent_of = [&](int w) {
      for (size_t i = red_parent_keys.size(); i-- > 0;)
        if (red_parent_keys[i] == w) return red_parent_vals[i];
      return -1;
    };
    // Walk parents from the hit back to the seed.  At least one step is taken
    // even when hit == seed (the cycle may pass through other nodes first).
    std::vector<int> back;
    int w = hit;
    do {
      back.push_back(w);
      w = parent_of(w);
    } while (w != seed && w != -1);
    std::reverse(back.begin(), back.end());  // nodes after seed, ending at hit

    const auto hit_it = std::find(path.begin(), path.end(), hit);
    Plan plan;
    for (auto it = path.begin(); it != hit_it; ++it) plan.stem.push_back(*it / nq);
    for (auto it = hit_it; it != path.end(); ++it) plan.loop.push_back(*it / nq);
    for (size_t i = 0; i + 1 < back.size(); ++i) plan.loop.push_back(back[i] / nq);
    return plan;
  }

  std::optional<Plan> run() {
    struct Frame {
      int v;
      std::vector<int> succs;
      size_t next = 0;
    };
    for (int s0 : ts.initial) {
      for (int q0 : ba.initial) {
        const int root = node_id(s0, q0);
        if (blue_done[root]) continue;
        std::vector<Frame> frames;
        frames.push_back({root, successors(root), 0});
        on_path[root] = 1;
        path.push_back(root);
        while (!frames.empty()) {
          Frame& f = frames.back();
          if (f.next < f.succs.size()) {
            const int w = f.succs[f.next++];
            if (blue_done[w] || on_path[w]) continue;
            on_path[w] = 1;
            path.push_back(w);
            frames.push_back({w, successors(w), 0});
            continue;
          }
          const int v = f.v;
          if (q_accepting[v % nq]) {
            std::vector<int> rpk, rpv;
            const int hit = red_search(v, rpk, rpv);
            if (hit != -1) return extract(hit, rpk, rpv, v);
          }
          frames.pop_back();
          on_path[v] = 0;
          path.pop_back();
          blue_done[v] = 1;
        }
      }
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<Plan> find_plan(const TransitionSystem& ts, const Formula& f) {
  validate(ts);
  const BuchiAutomaton ba = ltl_to_buchi(f);
  if (ba.num_states() == 0 || ba.initial.empty()) return std::nullopt;
  ProductSearch search(ts, ba);
  return search.run();
}

Verdict holds_universally(const TransitionSystem& ts, const Formula& f) {
  auto counterexample = find_plan(ts, f_not(f));
  Verdict v;
  v.holds = !counterexample.has_value();
  v.witness = std::move(counterexample);
  return v;
}

namespace {

using Bits = std::vector<char>;

struct CtlEngine {
  const TransitionSystem& ts;
  const int n;
  std::vector<std::vector<int>> pred;

  explicit CtlEngine(const TransitionSystem& ts_) : ts(ts_), n(ts_.num_states()) {
    pred.resize(n);
    for (int s = 0; s < n; ++s)
      for (int t : ts.succ[s]) pred[t].push_back(s);
  }

  Bits lift_not(Bits a) const {
    for (auto& x : a) x = !x;
    return a;
  }
  Bits lift_and(Bits a, const Bits& b) const {
    for (int s = 0; s < n; ++s) a[s] = a[s] && b[s];
    return a;
  }
  Bits lift_or(Bits a, const Bits& b) const {
    for (int s = 0; s < n; ++s) a[s] = a[s] || b[s];
    return a;
  }

  Bits ex(const Bits& a) const {
    Bits out(n, 0);
    for (int s = 0; s < n; ++s)
      for (int t : ts.succ[s])
        if (a[t]) {
          out[s] = 1;
          break;
        }
    return out;
  }

  // Least fixpoint: q | (p & EX result)
  Bits eu(const Bits& p, const Bits& q) const {
    Bits out = q;
    std::vector<int> work;
    for (int s = 0; s < n; ++s)
      if (out[s]) work.push_back(s);
    while (!work.empty()) {
      const int t = work.back();
      work.pop_back();
      for (int s : pred[t])
        if (!out[s] && p[s]) {
          out[s] = 1;
          work.push_back(s);
        }
    }
    return out;
  }

  // Greatest fixpoint: p & EX result
  Bits eg(const Bits& p) const {
    Bits out = p;
    std::vector<int> count(n, 0), work;
    for (int s = 0; s < n; ++s) {
      if (!out[s]) continue;
      for (int t : ts.succ[s])
        if (out[t]) ++count[s];
      if (count[s] == 0) {
        out[s] = 0;
        work.push_back(s);
      }
    }
    while (!work.empty()) {
      const int t = work.back();
      work.pop_back();
      for (int s : pred[t])
        if (out[s] && --count[s] == 0) {
          out[s] = 0;
          work.push_back(s);
        }
    }
    return out;
  }

  Bits eval(const Formula& f) const {
    switch (f.op) {
      case Op::True: return Bits(n, 1);
      case Op::False: return Bits(n, 0);
      case Op::Atom: {
        Bits out(n, 0);
        for (int s = 0; s < n; ++s) out[s] = ts.label[s].count(f.prop) ? 1 : 0;
        return out;
      }
      case Op::Not: return lift_not(eval(f.kids[0]));
      case Op::And: {
        Bits out(n, 1);
        for (const auto& k : f.kids) out = lift_and(std::move(out), eval(k));
        return out;
      }
      case Op::Or: {
        Bits out(n, 0);
        for (const auto& k : f.kids) out = lift_or(std::move(out), eval(k));
        return out;
      }
      case Op::Implies: return lift_or(lift_not(eval(f.kids[0])), eval(f.kids[1]));
      case Op::Iff: {
        Bits a = eval(f.kids[0]), b = eval(f.kids[1]);
        for (int s = 0; s < n; ++s) a[s] = a[s] == b[s];
        return a;
      }
      case Op::ForAll:
      case Op::Exists: return eval_quantified(f);
      default:
        throw formula_error("bare temporal operator in CTL evaluation");
    }
  }

  Bits eval_quantified(const Formula& f) const {
    const bool exists = f.op == Op::Exists;
    const Formula& t = f.kids[0];
    switch (t.op) {
      case Op::Next: {
        Bits a = eval(t.kids[0]);
        return exists ? ex(a) : lift_not(ex(lift_not(std::move(a))));
      }
      case Op::Finally: {
        Bits a = eval(t.kids[0]);
        if (exists) return eu(Bits(n, 1), a);          // EF a = E[true U a]
        return lift_not(eg(lift_not(std::move(a))));   // AF a = !EG !a
      }
      case Op::Globally: {
        Bits a = eval(t.kids[0]);
        if (exists) return eg(a);
        return lift_not(eu(Bits(n, 1), lift_not(std::move(a))));  // AG a = !EF !a
      }
      case Op::Until: {
        Bits p = eval(t.kids[0]), q = eval(t.kids[1]);
        if (exists) return eu(p, q);
        // A[p U q] = !(E[!q U (!p & !q)] | EG !q)
        Bits np = lift_not(std::move(p)), nq = lift_not(std::move(q));
        Bits bad = lift_or(eu(nq, lift_and(np, nq)), eg(nq));
        return lift_not(std::move(bad));
      }
      case Op::WeakUntil: {
        Bits p = eval(t.kids[0]), q = eval(t.kids[1]);
        if (exists) return lift_or(eu(p, q), eg(p));  // E[p W q] = E[p U q] | EG p
        // A[p W q] = !E[!q U (!p & !q)]
        Bits np = lift_not(std::move(p)), nq = lift_not(std::move(q));
        return lift_not(eu(nq, lift_and(np, nq)));
      }
      default:
        throw formula_error("path quantifier must wrap a temporal operator");
    }
  }
};

}  // namespace

std::vector<char> ctl_states(const TransitionSystem& ts, const Formula& f) {
  validate(ts);
  validate_ctl(f);
  return CtlEngine(ts).eval(f);
}

Verdict check_ctl(const TransitionSystem& ts, const Formula& f) {
  const auto marks = ctl_states(ts, f);
  Verdict v;
  v.holds = std::all_of(ts.initial.begin(), ts.initial.end(),
                        [&](int s) { return marks[s] != 0; });
  return v;
}

namespace {

bool brute_rec(const TransitionSystem& ts, const Formula& f, std::vector<int>& path,
               int max_stem, int max_loop) {
  const int len = static_cast<int>(path.size());
  const int last = path.back();
  // Try every loop closure the bounds allow.
  for (int j = std::max(0, len - max_loop); j < len; ++j) {
    if (j > max_stem) break;
    const auto& succ = ts.succ[last];
    if (std::find(succ.begin(), succ.end(), path[j]) == succ.end()) continue;
    Plan plan;
    plan.stem.assign(path.begin(), path.begin() + j);
    plan.loop.assign(path.begin() + j, path.end());
    if (eval_lasso(f, plan_trace(ts, plan))) return true;
  }
  if (len >= max_stem + max_loop) return false;
  for (int next : ts.succ[last]) {
    path.push_back(next);
    if (brute_rec(ts, f, path, max_stem, max_loop)) return true;
    path.pop_back();
  }
  return false;
}

}  // namespace

bool brute_force_plan_exists(const TransitionSystem& ts, const Formula& f, int max_stem,
                             int max_loop) {
  validate(ts);
  for (int s0 : ts.initial) {
    std::vector<int> path{s0};
    if (brute_rec(ts, f, path, max_stem, max_loop)) return true;
  }
  return false;
}

namespace {

const char* kSmvKeywords[] = {
    "MODULE", "DEFINE",  "MDEFINE", "CONSTANTS", "VAR",     "IVAR",    "FROZENVAR",
    "INIT",   "TRANS",   "INVAR",   "SPEC",      "CTLSPEC", "LTLSPEC", "PSLSPEC",
    "COMPUTE", "NAME",   "INVARSPEC", "FAIRNESS", "JUSTICE", "COMPASSION", "ISA",
    "ASSIGN", "CONSTRAINT", "SIMPWFF", "CTLWFF",  "LTLWFF",  "PSLWFF",  "COMPWFF",
    "IN",     "MIN",     "MAX",     "MIRROR",    "PRED",    "PREDICATES", "process",
    "array",  "of",      "boolean", "integer",   "real",    "word",    "word1",
    "bool",   "signed",  "unsigned", "extend",   "resize",  "sizeof",  "uwconst",
    "swconst", "EX",     "AX",      "EF",        "AF",      "EG",      "AG",
    "E",      "F",       "O",       "G",         "H",       "X",       "Y",
    "Z",      "A",       "U",       "S",         "V",       "T",       "BU",
    "EBF",    "ABF",     "EBG",     "ABG",       "case",    "esac",    "mod",
    "next",   "init",    "union",   "in",        "xor",     "xnor",    "self",
    "TRUE",   "FALSE",   "count",   "abs",       "max",     "min",
};

bool is_smv_keyword(const std::string& s) {
  for (const char* k : kSmvKeywords)
    if (s == k) return true;
  return false;
}

// SMV identifier escaping: invalid characters become '_', keywords and
// non-alphabetic leads get an "x_" prefix.
std::string smv_escape(const std::string& name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0])) ||
      is_smv_keyword(out))
    out = "x_" + out;
  return out;
}

std::string state_set(const TransitionSystem& ts, const std::vector<int>& states) {
  std::string out = "{";
  for (size_t i = 0; i < states.size(); ++i) {
    if (i) out += ", ";
    out += smv_escape(ts.state_name(states[i]));
  }
  return out + "}";
}

}  // namespace

std::string emit_smv(const TransitionSystem& ts,
                     const std::vector<std::pair<Logic, Formula>>& specs) {
  validate(ts);
  PropSet universe;
  for (const auto& l : ts.label) universe.insert(l.begin(), l.end());
  for (const auto& [logic, f] : specs) {
    const PropSet a = atoms(f);
    universe.insert(a.begin(), a.end());
  }

  std::string out = "MODULE main\n";
  out += "VAR\n  s : {";
  for (int s = 0; s < ts.num_states(); ++s)
    out += (s ? ", " : "") + smv_escape(ts.state_name(s));
  out += "};\n";

  out += "ASSIGN\n";
  out += "  init(s) := " + state_set(ts, ts.initial) + ";\n";
  out += "  next(s) := case\n";
  for (int s = 0; s < ts.num_states(); ++s)
    out += "    s = " + smv_escape(ts.state_name(s)) + " : " + state_set(ts, ts.succ[s]) +
           ";\n";
  out += "  esac;\n";

  out += "DEFINE\n";
  for (const auto& p : universe) {
    std::vector<int> where;
    for (int s = 0; s < ts.num_states(); ++s)
      if (ts.label[s].count(p)) where.push_back(s);
    out += "  " + smv_escape(p.str()) + " := ";
    out += where.empty() ? "FALSE" : "s in " + state_set(ts, where);
    out += ";\n";
  }

  for (const auto& [logic, f] : specs) {
    if (logic == Logic::Ltl)
      out += "LTLSPEC " + emit(f, Format::SmvLtl) + "\n";
    else
      out += "CTLSPEC " + emit(f, Format::SmvCtl) + "\n";
  }
  return out;
}

std::string emit_smv_props(const PropSet& universe,
                           const std::vector<std::pair<Logic, Formula>>& specs) {
  PropSet all = universe;
  for (const auto& [logic, f] : specs) {
    const PropSet a = atoms(f);
    all.insert(a.begin(), a.end());
  }
  std::string out = "MODULE main\n";
  out += "VAR\n";
  for (const auto& p : all) out += "  " + smv_escape(p.str()) + " : boolean;\n";
  for (const auto& [logic, f] : specs) {
    if (logic == Logic::Ltl)
      out += "LTLSPEC " + emit(f, Format::SmvLtl) + "\n";
    else
      out += "CTLSPEC " + emit(f, Format::SmvCtl) + "\n";
  }
  return out;
}

}  // namespace mspec
