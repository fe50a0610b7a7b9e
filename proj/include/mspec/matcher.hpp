#pragma once

#include <map>
#include <string>
#include <vector>

#include "mspec/patterns.hpp"

namespace mspec {

// AC-canonical form: ∧/∨ flattened with children sorted under the structural
// order and duplicates dropped; idempotent.  Two formulas are "the same
// modulo AC" exactly when their canonical forms are equal.
Formula canonicalize(const Formula& f);

struct MatchBinding {
  PatternId id;
  PatternParams params;
};

// Classification of a formula against the pattern catalog:
//   SinglePattern  the whole formula is one template instance;
//   Conjunction    >= 1 top-level conjunct group matches a template; any
//                  leftovers are reported in residue;
//   Init           no temporal operator at all (a statement about the
//                  initial state);
//   NonMatching    anything else.
struct MatchResult {
  enum class Outcome { SinglePattern, Conjunction, Init, NonMatching };
  Outcome outcome = Outcome::NonMatching;
  std::vector<MatchBinding> matches;
  std::vector<Formula> residue;  // unmatched top-level conjuncts
};

// Purely syntactic matching modulo canonicalize: (1) whole-formula
// unification against each template in catalog order (arity bounded by the
// number of distinct atoms, counts searched over a small fixed range),
// (2) partitioning of top-level conjuncts into template instances,
// (3) init detection, (4) non-matching.  Formulas containing path
// quantifiers are matched against the CTL embeddings of the templates.
MatchResult match(const Formula& f);

// One corpus line: input text, its classification, or a parse failure.
struct CorpusLine {
  int line = 0;
  std::string text;
  bool parsed = false;
  std::string error;  // set when !parsed
  MatchResult result;
};

struct CorpusReport {
  std::vector<CorpusLine> lines;
  // Occurrence histogram over pattern names, plus the init / non-matching /
  // parse-error tallies.
  std::map<std::string, int> histogram;
  int init_count = 0;
  int non_matching_count = 0;
  int error_count = 0;
};

// Corpus format: one formula per line in the plain grammar; '#' comments and
// blank lines are skipped.
CorpusReport match_corpus(const std::string& text);

// Human-readable report: per-line classification plus the histogram.  States
// the fixed interpretation of "combination of patterns" (top-level
// conjunction partitioning) in the header.
std::string report_text(const CorpusReport& report);

}  // namespace mspec
