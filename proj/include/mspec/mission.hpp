#pragma once

#include <string>
#include <vector>

#include "mspec/parse.hpp"
#include "mspec/patterns.hpp"

namespace mspec {

// Structured-English mission requirements.  A mission file is a declarations
// block followed by a mission block:
//
//   declarations:
//     robots:     MP, M, MM          # optional; omit for single-robot missions
//     locations:  l1, l2, l3
//     conditions: human
//     actions:    grasp
//
//   mission:
//     ordered patrolling of l1, l2, l3
//     and when human instantly do grasp
//
// Clause phrases, one per catalog pattern ('a, b' stands for a comma-
// separated location list, 'c' a condition, 'x' an action, K a number):
//
//   visit a, b                          sequenced visit of a, b
//   ordered visit of a, b               strict ordered visit of a, b
//   fair visit of a, b                  patrol a, b
//   sequenced patrolling of a, b        ordered patrolling of a, b
//   strict ordered patrolling of a, b   fair patrolling of a, b
//   avoid a globally                    avoid a before c
//   avoid a after c                     avoid a at most K times
//   avoid a at least K times            avoid a exactly K times
//   when c instantly do x               when c eventually do x
//   when c promptly do x                do x exactly when c
//   do x exactly after c                stay in a until c
//
// Clauses compose with `and` / `or` (and binds tighter) and parentheses.
// When several robots are declared every clause must open with
// `robot <name> shall`, and the clause's location/action propositions are
// qualified with the robot name (conditions describe the environment and
// stay shared).  `#` starts a comment.

struct Declarations {
  std::vector<std::string> robots;
  std::vector<std::string> locations;
  std::vector<std::string> conditions;
  std::vector<std::string> actions;

  friend bool operator==(const Declarations&, const Declarations&) = default;
};

struct MissionNode {
  enum class Kind { Leaf, And, Or };

  Kind kind = Kind::Leaf;
  // Leaf payload.
  PatternId pattern = PatternId::Visit;
  PatternParams params;
  std::string robot;  // empty for single-robot missions
  // Composite payload.
  std::vector<MissionNode> kids;
  // Source position, for error reporting; ignored by equality.
  int line = 0;
  int column = 0;

  friend bool operator==(const MissionNode& a, const MissionNode& b) {
    return a.kind == b.kind && a.pattern == b.pattern && a.params == b.params &&
           a.robot == b.robot && a.kids == b.kids;
  }
};

struct Mission {
  Declarations decls;
  MissionNode root;

  friend bool operator==(const Mission&, const Mission&) = default;
};

// Parses a mission file.  Throws parse_error (line/column) on syntax errors,
// unknown phrases, undeclared or duplicate propositions, and arity slips.
Mission parse_mission(const std::string& text);

// Leaves via instantiate_ltl / instantiate_ctl, AND -> conjunction,
// OR -> disjunction.
Formula compile_ltl(const Mission& m);
Formula compile_ctl(const Mission& m);

// Canonical text form; parse_mission(pretty_print(m)) == m.
std::string pretty_print(const Mission& m);

// Distinct patterns used by the mission, sorted by catalog order.
std::vector<PatternId> pattern_set(const Mission& m);

}  // namespace mspec
