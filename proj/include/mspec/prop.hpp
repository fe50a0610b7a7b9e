#pragma once

#include <compare>
#include <set>
#include <string>

namespace mspec {

// Kind of an atomic proposition: a robot-location proposition, an environment
// condition, or a robot action.  The kind is descriptive metadata; identity
// and ordering are determined by (robot, name) alone, so the same symbol
// always denotes the same proposition no matter where it was created.
enum class PropKind { Location, Condition, Action };

struct Prop {
  PropKind kind = PropKind::Location;
  std::string robot;  // empty for single-robot missions
  std::string name;   // e.g. "l1", "cond", "act"

  // Rendered identifier used in formulas, traces and emitted files.
  std::string str() const { return robot.empty() ? name : robot + "_" + name; }

  friend bool operator==(const Prop& a, const Prop& b) {
    return a.robot == b.robot && a.name == b.name;
  }
  friend std::strong_ordering operator<=>(const Prop& a, const Prop& b) {
    if (auto c = a.robot <=> b.robot; c != 0) return c;
    return a.name <=> b.name;
  }
};

// Kind assignment for propositions appearing in bare formulas, where no
// declarations block is available: l<digits> reads as a location, a<digits>
// or act* as an action, everything else as a condition.
PropKind guess_kind(const std::string& name);

Prop make_prop(const std::string& name);  // kind guessed from the name
Prop make_prop(PropKind kind, std::string name);
Prop make_prop(PropKind kind, std::string robot, std::string name);

using PropSet = std::set<Prop>;

// Convenience for tests and trace building: parse a whitespace/comma
// separated list of proposition names, e.g. "l1 cond" -> {l1, cond}.
PropSet props_of(const std::string& names);

}  // namespace mspec
