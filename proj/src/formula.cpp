#include "mspec/formula.hpp"

#include <algorithm>

namespace mspec {

std::strong_ordering compare(const Formula& a, const Formula& b) {
  if (auto c = static_cast<int>(a.op) <=> static_cast<int>(b.op); c != 0) return c;
  if (a.op == Op::Atom) {
    if (auto c = a.prop <=> b.prop; c != 0) return c;
  }
  if (auto c = a.kids.size() <=> b.kids.size(); c != 0) return c;
  for (size_t i = 0; i < a.kids.size(); ++i)
    if (auto c = compare(a.kids[i], b.kids[i]); c != 0) return c;
  return std::strong_ordering::equal;
}

Formula f_true() { return Formula{Op::True, {}, {}}; }
Formula f_false() { return Formula{Op::False, {}, {}}; }
Formula f_atom(Prop p) { return Formula{Op::Atom, std::move(p), {}}; }
Formula f_atom(const std::string& name) { return f_atom(make_prop(name)); }
Formula f_not(Formula a) { return Formula{Op::Not, {}, {std::move(a)}}; }

static Formula flatten(Op op, std::vector<Formula> kids, Formula empty_value) {
  std::vector<Formula> flat;
  for (auto& k : kids) {
    if (k.op == op) {
      for (auto& kk : k.kids) flat.push_back(std::move(kk));
    } else {
      flat.push_back(std::move(k));
    }
  }
  if (flat.empty()) return empty_value;
  if (flat.size() == 1) return std::move(flat[0]);
  return Formula{op, {}, std::move(flat)};
}

Formula f_and(std::vector<Formula> kids) { return flatten(Op::And, std::move(kids), f_true()); }
Formula f_and(Formula a, Formula b) {
  std::vector<Formula> kids;
  kids.push_back(std::move(a));
  kids.push_back(std::move(b));
  return f_and(std::move(kids));
}
Formula f_or(std::vector<Formula> kids) { return flatten(Op::Or, std::move(kids), f_false()); }
Formula f_or(Formula a, Formula b) {
  std::vector<Formula> kids;
  kids.push_back(std::move(a));
  kids.push_back(std::move(b));
  return f_or(std::move(kids));
}
Formula f_implies(Formula a, Formula b) { return Formula{Op::Implies, {}, {std::move(a), std::move(b)}}; }
Formula f_iff(Formula a, Formula b) { return Formula{Op::Iff, {}, {std::move(a), std::move(b)}}; }
Formula f_next(Formula a) { return Formula{Op::Next, {}, {std::move(a)}}; }
Formula f_until(Formula a, Formula b) { return Formula{Op::Until, {}, {std::move(a), std::move(b)}}; }
Formula f_wuntil(Formula a, Formula b) { return Formula{Op::WeakUntil, {}, {std::move(a), std::move(b)}}; }
Formula f_finally(Formula a) { return Formula{Op::Finally, {}, {std::move(a)}}; }
Formula f_globally(Formula a) { return Formula{Op::Globally, {}, {std::move(a)}}; }

static bool is_temporal_op(Op op) {
  return op == Op::Next || op == Op::Until || op == Op::WeakUntil ||
         op == Op::Finally || op == Op::Globally;
}

Formula f_forall(Formula temporal) {
  if (!is_temporal_op(temporal.op))
    throw formula_error("path quantifier requires a temporal operator underneath");
  return Formula{Op::ForAll, {}, {std::move(temporal)}};
}
Formula f_exists(Formula temporal) {
  if (!is_temporal_op(temporal.op))
    throw formula_error("path quantifier requires a temporal operator underneath");
  return Formula{Op::Exists, {}, {std::move(temporal)}};
}

Formula normalize(const Formula& f) {
  std::vector<Formula> kids;
  kids.reserve(f.kids.size());
  for (const auto& k : f.kids) kids.push_back(normalize(k));
  switch (f.op) {
    case Op::True: return f_true();
    case Op::False: return f_false();
    case Op::Atom: return f_atom(f.prop);
    case Op::Not: return f_not(std::move(kids[0]));
    case Op::And: return f_and(std::move(kids));
    case Op::Or: return f_or(std::move(kids));
    case Op::Implies: return f_implies(std::move(kids[0]), std::move(kids[1]));
    case Op::Iff: return f_iff(std::move(kids[0]), std::move(kids[1]));
    case Op::Next: return f_next(std::move(kids[0]));
    case Op::Until: return f_until(std::move(kids[0]), std::move(kids[1]));
    case Op::WeakUntil: return f_wuntil(std::move(kids[0]), std::move(kids[1]));
    case Op::Finally: return f_finally(std::move(kids[0]));
    case Op::Globally: return f_globally(std::move(kids[0]));
    case Op::ForAll: return f_forall(std::move(kids[0]));
    case Op::Exists: return f_exists(std::move(kids[0]));
  }
  throw formula_error("normalize: unknown operator");
}

bool is_ltl(const Formula& f) {
  if (f.op == Op::ForAll || f.op == Op::Exists) return false;
  return std::all_of(f.kids.begin(), f.kids.end(), [](const Formula& k) { return is_ltl(k); });
}

bool is_temporal_free(const Formula& f) {
  if (is_temporal_op(f.op) || f.op == Op::ForAll || f.op == Op::Exists) return false;
  return std::all_of(f.kids.begin(), f.kids.end(),
                     [](const Formula& k) { return is_temporal_free(k); });
}

static void validate_ctl_rec(const Formula& f) {
  switch (f.op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return;
    case Op::Not:
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Iff:
      for (const auto& k : f.kids) validate_ctl_rec(k);
      return;
    case Op::ForAll:
    case Op::Exists: {
      const Formula& t = f.kids[0];
      if (!is_temporal_op(t.op))
        throw formula_error("path quantifier must wrap a temporal operator");
      // operands of the wrapped temporal operator are state formulas again
      for (const auto& k : t.kids) validate_ctl_rec(k);
      return;
    }
    case Op::Next:
    case Op::Until:
    case Op::WeakUntil:
    case Op::Finally:
    case Op::Globally:
      throw formula_error("temporal operator not under a path quantifier; not a CTL formula");
  }
}

void validate_ctl(const Formula& f) { validate_ctl_rec(f); }

bool is_ctl(const Formula& f) {
  try {
    validate_ctl(f);
  } catch (const formula_error&) {
    return false;
  }
  return true;
}

static void atoms_rec(const Formula& f, PropSet& out) {
  if (f.op == Op::Atom) out.insert(f.prop);
  for (const auto& k : f.kids) atoms_rec(k, out);
}

PropSet atoms(const Formula& f) {
  PropSet out;
  atoms_rec(f, out);
  return out;
}

Formula expand_derived(const Formula& f) {
  switch (f.op) {
    case Op::True:
    case Op::False:
    case Op::Atom:
      return f;
    case Op::Not:
      return f_not(expand_derived(f.kids[0]));
    case Op::And: {
      std::vector<Formula> kids;
      for (const auto& k : f.kids) kids.push_back(expand_derived(k));
      return f_and(std::move(kids));
    }
    case Op::Or: {
      std::vector<Formula> kids;
      for (const auto& k : f.kids) kids.push_back(expand_derived(k));
      return f_or(std::move(kids));
    }
    case Op::Implies:
      return f_or(f_not(expand_derived(f.kids[0])), expand_derived(f.kids[1]));
    case Op::Iff: {
      Formula a = expand_derived(f.kids[0]);
      Formula b = expand_derived(f.kids[1]);
      return f_or(f_and(a, b), f_and(f_not(a), f_not(b)));
    }
    case Op::Next:
      return f_next(expand_derived(f.kids[0]));
    case Op::Until:
      return f_until(expand_derived(f.kids[0]), expand_derived(f.kids[1]));
    case Op::WeakUntil: {
      // p W q == (p U q) | G p, with G p == !(true U !p)
      Formula p = expand_derived(f.kids[0]);
      Formula q = expand_derived(f.kids[1]);
      return f_or(f_until(p, std::move(q)), f_not(f_until(f_true(), f_not(p))));
    }
    case Op::Finally:
      return f_until(f_true(), expand_derived(f.kids[0]));
    case Op::Globally:
      return f_not(f_until(f_true(), f_not(expand_derived(f.kids[0]))));
    case Op::ForAll:
    case Op::Exists:
      throw formula_error("expand_derived: path quantifiers are not LTL");
  }
  throw formula_error("expand_derived: unknown operator");
}

static Formula nnf_pos(const Formula& f);
static Formula nnf_neg(const Formula& f);

static Formula nnf_pos(const Formula& f) {
  switch (f.op) {
    case Op::True: return f_true();
    case Op::False: return f_false();
    case Op::Atom: return f;
    case Op::Not: return nnf_neg(f.kids[0]);
    case Op::And: {
      std::vector<Formula> kids;
      for (const auto& k : f.kids) kids.push_back(nnf_pos(k));
      return f_and(std::move(kids));
    }
    case Op::Or: {
      std::vector<Formula> kids;
      for (const auto& k : f.kids) kids.push_back(nnf_pos(k));
      return f_or(std::move(kids));
    }
    case Op::Implies: return f_or(nnf_neg(f.kids[0]), nnf_pos(f.kids[1]));
    case Op::Iff:
      return f_or(f_and(nnf_pos(f.kids[0]), nnf_pos(f.kids[1])),
                  f_and(nnf_neg(f.kids[0]), nnf_neg(f.kids[1])));
    case Op::Next: return f_next(nnf_pos(f.kids[0]));
    case Op::Until: return f_until(nnf_pos(f.kids[0]), nnf_pos(f.kids[1]));
    case Op::WeakUntil: return f_wuntil(nnf_pos(f.kids[0]), nnf_pos(f.kids[1]));
    case Op::Finally: return f_until(f_true(), nnf_pos(f.kids[0]));
    case Op::Globally: return f_wuntil(nnf_pos(f.kids[0]), f_false());
    case Op::ForAll:
    case Op::Exists:
      throw formula_error("nnf: path quantifiers are not LTL");
  }
  throw formula_error("nnf: unknown operator");
}

static Formula nnf_neg(const Formula& f) {
  switch (f.op) {
    case Op::True: return f_false();
    case Op::False: return f_true();
    case Op::Atom: return f_not(f);
    case Op::Not: return nnf_pos(f.kids[0]);
    case Op::And: {
      std::vector<Formula> kids;
      for (const auto& k : f.kids) kids.push_back(nnf_neg(k));
      return f_or(std::move(kids));
    }
    case Op::Or: {
      std::vector<Formula> kids;
      for (const auto& k : f.kids) kids.push_back(nnf_neg(k));
      return f_and(std::move(kids));
    }
    case Op::Implies: return f_and(nnf_pos(f.kids[0]), nnf_neg(f.kids[1]));
    case Op::Iff:
      return f_or(f_and(nnf_pos(f.kids[0]), nnf_neg(f.kids[1])),
                  f_and(nnf_neg(f.kids[0]), nnf_pos(f.kids[1])));
    case Op::Next: return f_next(nnf_neg(f.kids[0]));
    case Op::Until:
      // !(p U q) == (!q) W (!p & !q)
      return f_wuntil(nnf_neg(f.kids[1]), f_and(nnf_neg(f.kids[0]), nnf_neg(f.kids[1])));
    case Op::WeakUntil:
      // !(p W q) == (!q) U (!p & !q)
      return f_until(nnf_neg(f.kids[1]), f_and(nnf_neg(f.kids[0]), nnf_neg(f.kids[1])));
    case Op::Finally: return f_wuntil(nnf_neg(f.kids[0]), f_false());  // !F p == G !p
    case Op::Globally: return f_until(f_true(), nnf_neg(f.kids[0]));   // !G p == F !p
    case Op::ForAll:
    case Op::Exists:
      throw formula_error("nnf: path quantifiers are not LTL");
  }
  throw formula_error("nnf: unknown operator");
}

Formula nnf(const Formula& f) { return nnf_pos(f); }

}  // namespace mspec
