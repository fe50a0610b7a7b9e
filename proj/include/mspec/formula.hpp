#pragma once

#include <compare>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "mspec/prop.hpp"

namespace mspec {

// Shared LTL/CTL abstract syntax.  F, G, W, ->, <-> and the constants are
// first-class nodes so that pattern templates can be represented exactly as
// printed; expand_derived is the single place where they reduce to the
// {atoms, !, &, |, X, U} core.
enum class Op {
  True,
  False,
  Atom,
  Not,
  And,       // n-ary, flattened, >= 2 children
  Or,        // n-ary, flattened, >= 2 children
  Implies,   // binary
  Iff,       // binary
  Next,      // unary
  Until,     // binary
  WeakUntil, // binary
  Finally,   // unary
  Globally,  // unary
  ForAll,    // CTL path quantifier, child is a temporal operator
  Exists,    // CTL path quantifier, child is a temporal operator
};

struct Formula {
  Op op = Op::True;
  Prop prop;                  // meaningful iff op == Atom
  std::vector<Formula> kids;

  friend bool operator==(const Formula&, const Formula&) = default;
};

struct formula_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Total deterministic structural order (by operator, then atom, then
// children); used by canonicalize and for stable containers.
std::strong_ordering compare(const Formula& a, const Formula& b);
inline bool operator<(const Formula& a, const Formula& b) { return compare(a, b) < 0; }

// ---- constructors (maintain the flattening invariants) -------------------
Formula f_true();
Formula f_false();
Formula f_atom(Prop p);
Formula f_atom(const std::string& name);  // kind guessed from the name
Formula f_not(Formula a);
Formula f_and(std::vector<Formula> kids);  // flattens; 0 kids -> true, 1 -> kid
Formula f_and(Formula a, Formula b);
Formula f_or(std::vector<Formula> kids);   // flattens; 0 kids -> false, 1 -> kid
Formula f_or(Formula a, Formula b);
Formula f_implies(Formula a, Formula b);
Formula f_iff(Formula a, Formula b);
Formula f_next(Formula a);
Formula f_until(Formula a, Formula b);
Formula f_wuntil(Formula a, Formula b);
Formula f_finally(Formula a);
Formula f_globally(Formula a);
Formula f_forall(Formula temporal);
Formula f_exists(Formula temporal);

// Rebuilds the formula through the constructors, restoring the flattening
// invariants on ASTs assembled by hand or by a parser.
Formula normalize(const Formula& f);

// ---- classification -------------------------------------------------------
bool is_ltl(const Formula& f);          // no path quantifiers anywhere
bool is_temporal_free(const Formula& f);  // no X/U/W/F/G (and no quantifiers)
bool is_ctl(const Formula& f);          // well-formed per the CTL grammar
// Throws formula_error with a description when f is not well-formed CTL.
void validate_ctl(const Formula& f);

// Set of atomic propositions occurring in f.
PropSet atoms(const Formula& f);

// ---- normal forms ----------------------------------------------------------
// Reduces F, G, W, -> and <-> to the {atoms, !, &, |, X, U} core.
// Rejects path quantifiers.
Formula expand_derived(const Formula& f);

// Negation normal form over {true, false, literals, &, |, X, U, W}.
// Accepts any LTL input (derived operators included); rejects quantifiers.
Formula nnf(const Formula& f);

}  // namespace mspec
