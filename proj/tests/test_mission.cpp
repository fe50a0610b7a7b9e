#include <doctest.h>

#include <fstream>
#include <sstream>

#include "mspec/mission.hpp"

using namespace mspec;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE_MESSAGE(in.good(), "cannot open " << path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Mission load_scenario(int i) {
  return parse_mission(read_file(std::string(MSPEC_SOURCE_DIR) + "/missions/sc" +
                                 std::to_string(i) + ".mission"));
}

constexpr const char* kTinyDecls =
    "declarations:\n"
    "  locations:  l1, l2, l3, l4\n"
    "  conditions: cond\n"
    "  actions:    act\n";

Mission tiny(const std::string& mission_body) {
  return parse_mission(std::string(kTinyDecls) + "mission:\n" + mission_body + "\n");
}

}  // namespace

TEST_SUITE("mission") {
  TEST_CASE("the five bundled scenarios use the published pattern sets") {
    const std::vector<std::vector<PatternId>> expected = {
        {PatternId::OrderedPatrolling, PatternId::InstantaneousReaction},
        {PatternId::OrderedVisit, PatternId::Patrolling,
         PatternId::InstantaneousReaction, PatternId::Wait},
        {PatternId::StrictOrderedVisit, PatternId::InstantaneousReaction},
        {PatternId::Patrolling, PatternId::InstantaneousReaction},
        {PatternId::Visit, PatternId::InstantaneousReaction},
    };
    for (int i = 1; i <= 5; ++i) {
      CAPTURE(i);
      const Mission m = load_scenario(i);
      CHECK(pattern_set(m) == expected[i - 1]);
      CHECK(is_ltl(compile_ltl(m)));
      CHECK(is_ctl(compile_ctl(m)));
    }
  }

  TEST_CASE("multiple robots qualify locations and actions but not conditions") {
    const Mission m = load_scenario(2);
    REQUIRE(m.decls.robots == std::vector<std::string>{"MP", "M", "MM"});
    const PropSet props = atoms(compile_ltl(m));
    CHECK(props.count(make_prop(PropKind::Location, "MP", "storage")) == 1);
    CHECK(props.count(make_prop(PropKind::Action, "MM", "unload_equipment")) == 1);
    // environment conditions stay shared
    CHECK(props.count(make_prop(PropKind::Condition, "", "items_needed")) == 1);
    CHECK(props.count(make_prop(PropKind::Condition, "", "heavy_item")) == 1);
    for (const auto& p : props) CHECK(p.str().find("M_items_needed") == std::string::npos);
  }

  TEST_CASE("a clause per catalog pattern parses") {
    const Mission m = tiny(
        "  visit l1, l2\n"
        "  and sequenced visit of l1, l2\n"
        "  and ordered visit of l1, l2\n"
        "  and strict ordered visit of l1, l2\n"
        "  and fair visit of l1, l2\n"
        "  and patrol l1, l2\n"
        "  and sequenced patrolling of l1, l2\n"
        "  and ordered patrolling of l1, l2\n"
        "  and strict ordered patrolling of l1, l2\n"
        "  and fair patrolling of l1, l2\n"
        "  and avoid l3 before cond\n"
        "  and avoid l3 globally\n"
        "  and avoid l3 after cond\n"
        "  and avoid l3 at most 2 times\n"
        "  and avoid l3 at least 2 times\n"
        "  and avoid l3 exactly 2 times\n"
        "  and when cond instantly do act\n"
        "  and when cond eventually do act\n"
        "  and when cond promptly do act\n"
        "  and do act exactly when cond\n"
        "  and do act exactly after cond\n"
        "  and stay in l4 until cond");
    const auto used = pattern_set(m);
    CHECK(static_cast<int>(used.size()) == kPatternCount);
    // pattern_set reports catalog order
    for (size_t i = 0; i + 1 < used.size(); ++i) CHECK(used[i] < used[i + 1]);
    CHECK(is_ltl(compile_ltl(m)));
    CHECK(is_ctl(compile_ctl(m)));
  }

  TEST_CASE("a robot may be named even when it is the only one") {
    const Mission m = parse_mission(
        "declarations:\n"
        "  robots:     r1\n"
        "  locations:  l1, l2, l4\n"
        "  conditions: cond\n"
        "mission:\n"
        "  robot r1 shall visit l1, l2 and robot r1 shall stay in l4 until cond\n");
    REQUIRE(m.root.kind == MissionNode::Kind::And);
    REQUIRE(m.root.kids.size() == 2);
    CHECK(m.root.kids[0].pattern == PatternId::Visit);
    CHECK(m.root.kids[0].robot == "r1");
    CHECK(m.root.kids[1].pattern == PatternId::Wait);
    // a single robot keeps propositions unqualified
    CHECK(m.root.kids[0].params.locations[0] == make_prop(PropKind::Location, "l1"));
  }

  TEST_CASE("and binds tighter than or; parentheses override") {
    const Mission m = tiny("  visit l1 or visit l2 and avoid l3 globally");
    REQUIRE(m.root.kind == MissionNode::Kind::Or);
    REQUIRE(m.root.kids.size() == 2);
    CHECK(m.root.kids[0].kind == MissionNode::Kind::Leaf);
    REQUIRE(m.root.kids[1].kind == MissionNode::Kind::And);
    CHECK(m.root.kids[1].kids[1].pattern == PatternId::GlobalAvoidance);

    const Mission g = tiny("  ( visit l1 or visit l2 ) and avoid l3 globally");
    REQUIRE(g.root.kind == MissionNode::Kind::And);
    CHECK(g.root.kids[0].kind == MissionNode::Kind::Or);
  }

  TEST_CASE("compilation is a homomorphism into the templates") {
    const Mission m = tiny("  visit l1 and avoid l3 globally");
    const Prop l1 = make_prop(PropKind::Location, "l1");
    const Prop l3 = make_prop(PropKind::Location, "l3");
    CHECK(compile_ltl(m) ==
          f_and({instantiate_ltl(PatternId::Visit, params_locations({l1})),
                 instantiate_ltl(PatternId::GlobalAvoidance, params_locations({l3}))}));
    CHECK(compile_ctl(m) ==
          f_and({instantiate_ctl(PatternId::Visit, params_locations({l1})),
                 instantiate_ctl(PatternId::GlobalAvoidance, params_locations({l3}))}));

    const Mission o = tiny("  visit l1 or visit l2");
    const Prop l2 = make_prop(PropKind::Location, "l2");
    CHECK(compile_ltl(o) ==
          f_or({instantiate_ltl(PatternId::Visit, params_locations({l1})),
                instantiate_ltl(PatternId::Visit, params_locations({l2}))}));
  }

  TEST_CASE("counted avoidance reads its bound") {
    const Mission m = tiny("  avoid l3 at most 2 times");
    CHECK(m.root.pattern == PatternId::UpperRestrictedAvoidance);
    CHECK(m.root.params.count == 2);
    CHECK_THROWS_AS(tiny("  avoid l3 at most -1 times"), parse_error);
  }

  TEST_CASE("parse errors carry positions and plain messages") {
    // undeclared location: line 5 of tiny() input is the clause line
    try {
      tiny("  visit l9");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.line == 6);  // 4 declaration lines + "mission:" + clause
      CHECK(e.column >= 3);
      CHECK(std::string(e.what()).find("l9") != std::string::npos);
    }

    CHECK_THROWS_AS(tiny("  visit l1, l1"), parse_error);           // duplicate loc
    CHECK_THROWS_AS(tiny("  hover over l1"), parse_error);          // unknown phrase
    CHECK_THROWS_AS(tiny("  visit l1 and"), parse_error);           // dangling and
    CHECK_THROWS_AS(tiny("  visit l1 visit l2"), parse_error);      // missing and
    CHECK_THROWS_AS(tiny("  when cond instantly do l1"), parse_error);  // not an action
    CHECK_THROWS_AS(tiny("  robot r9 shall visit l1"), parse_error);    // no such robot
    CHECK_THROWS_AS(parse_mission("mission:\n  visit l1\n"), parse_error);
    CHECK_THROWS_AS(parse_mission("declarations:\n  locations: l1, l1\n"
                                  "mission:\n  visit l1\n"),
                    parse_error);  // duplicate declaration
    CHECK_THROWS_AS(parse_mission("declarations:\n  locations: and\n"
                                  "mission:\n  visit and\n"),
                    parse_error);  // reserved word as a name
  }

  TEST_CASE("clauses without the robot prefix are rejected in multi-robot missions") {
    CHECK_THROWS_AS(parse_mission("declarations:\n"
                                  "  robots:    r1, r2\n"
                                  "  locations: l1\n"
                                  "mission:\n"
                                  "  visit l1\n"),
                    parse_error);
  }

  TEST_CASE("pretty_print round-trips") {
    for (int i = 1; i <= 5; ++i) {
      CAPTURE(i);
      const Mission m = load_scenario(i);
      CHECK(parse_mission(pretty_print(m)) == m);
    }
    const Mission synth = tiny(
        "  ( visit l1 or fair patrolling of l1, l2 )\n"
        "  and avoid l3 exactly 3 times\n"
        "  and do act exactly when cond");
    CHECK(parse_mission(pretty_print(synth)) == synth);
  }
}
