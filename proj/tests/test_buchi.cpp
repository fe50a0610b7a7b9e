#include <doctest.h>

#include <algorithm>

#include "mspec/buchi.hpp"
#include "mspec/parse.hpp"
#include "test_support.hpp"

using namespace mspec;

namespace {
Formula atom(const char* name) { return f_atom(make_prop(name)); }
}  // namespace

TEST_SUITE("buchi") {
  TEST_CASE("edge labels are conjunctions of literals") {
    EdgeLabel label{props_of("l1"), props_of("l2")};
    CHECK(label.matches(props_of("l1")));
    CHECK(label.matches(props_of("l1 cond")));
    CHECK(!label.matches(props_of("l1 l2")));
    CHECK(!label.matches(props_of("cond")));
    CHECK(EdgeLabel{}.matches(PropSet{}));  // unconstrained edge
  }

  TEST_CASE("G !l1 compiles to the one-state safety automaton") {
    const BuchiAutomaton b = ltl_to_buchi(f_globally(f_not(atom("l1"))));
    CHECK(b.num_states() == 1);
    REQUIRE(b.edges[0].size() == 1);
    CHECK(b.edges[0][0].dst == 0);
    CHECK(b.edges[0][0].label.neg == props_of("l1"));
    CHECK(b.edges[0][0].label.pos.empty());
    CHECK(accepts_lasso(b, parse_lasso("l3 | l2")));
    CHECK(!accepts_lasso(b, parse_lasso("l1 | l2")));
  }

  TEST_CASE("F l1 compiles to the two-state reachability automaton") {
    const BuchiAutomaton b = ltl_to_buchi(f_finally(atom("l1")));
    CHECK(b.num_states() == 2);
    CHECK(accepts_lasso(b, parse_lasso("l2 ; l1 | l2")));
    CHECK(accepts_lasso(b, parse_lasso("| l1")));
    CHECK(!accepts_lasso(b, parse_lasso("l2 | l3")));
  }

  TEST_CASE("membership matches the sequencing example") {
    const BuchiAutomaton b =
        ltl_to_buchi(f_finally(f_and(atom("l1"), f_finally(atom("l2")))));
    CHECK(accepts_lasso(b, parse_lasso("l1 ; l2 | l4")));
    CHECK(!accepts_lasso(b, parse_lasso("l2 | l4")));
  }

  TEST_CASE("membership matches the visit example trace") {
    const BuchiAutomaton b = ltl_to_buchi(
        f_and({f_finally(atom("l1")), f_finally(atom("l2")), f_finally(atom("l3"))}));
    CHECK(accepts_lasso(b, parse_lasso("l1 ; l4 ; l3 ; l1 ; l4 ; l2 | l4")));
    CHECK(!accepts_lasso(b, parse_lasso("l1 ; l4 ; l3 | l4")));
  }

  TEST_CASE("CTL input is rejected") {
    CHECK_THROWS_AS(ltl_to_gba(f_forall(f_globally(atom("p")))), formula_error);
  }

  TEST_CASE("degeneralize: no obligations become an all-accepting copy") {
    const GeneralizedBuchi g = ltl_to_gba(f_globally(f_not(atom("l1"))));
    CHECK(g.accept.empty());  // no until subformula, no obligation
    const BuchiAutomaton b = degeneralize(g);
    REQUIRE(b.accept.size() == 1);
    CHECK(static_cast<int>(b.accept[0].size()) == b.num_states());
    CHECK(b.num_states() == g.num_states());
  }

  TEST_CASE("degeneralize: a single set passes through unchanged") {
    const GeneralizedBuchi g = ltl_to_gba(f_finally(atom("l1")));
    REQUIRE(g.accept.size() == 1);
    const BuchiAutomaton b = degeneralize(g);
    CHECK(b.edges == g.edges);
    CHECK(b.initial == g.initial);
    CHECK(b.accept == g.accept);
  }

  TEST_CASE("degeneralize preserves membership on random lassos") {
    // two obligations: the conjunction of two eventualities
    SplitMix64 rng(42);
    const Formula f =
        f_and(f_globally(f_finally(atom("l1"))), f_globally(f_finally(atom("l2"))));
    const GeneralizedBuchi g = ltl_to_gba(f);
    CHECK(g.accept.size() == 2);
    const BuchiAutomaton b = degeneralize(g);
    for (int i = 0; i < 200; ++i) {
      const LassoTrace t = testing::rand_lasso(rng);
      CHECK(accepts_lasso(g, t) == accepts_lasso(b, t));
    }
  }

  TEST_CASE("dual oracle: automaton membership equals direct evaluation") {
    SplitMix64 rng(987654321);
    for (int round = 0; round < 60; ++round) {
      const Formula f = testing::rand_formula(rng);
      CAPTURE(round);
      const BuchiAutomaton b = ltl_to_buchi(f);
      for (int i = 0; i < 5; ++i) {
        const LassoTrace t = testing::rand_lasso(rng);
        CHECK(accepts_lasso(b, t) == eval_lasso(f, t));
      }
    }
  }

  TEST_CASE("pattern-template automata stay comfortably below the closure bound") {
    // regression sizes: frozen from the first implementation run
    CHECK(ltl_to_buchi(f_finally(atom("l1"))).num_states() == 2);
    CHECK(ltl_to_buchi(f_globally(f_not(atom("l1")))).num_states() == 1);
    for (const auto& e : catalog()) {
      PatternParams p;
      if (e.min_locations > 0)
        p.locations = {make_prop("l1"), make_prop("l2"), make_prop("l3")};
      if (!e.variable_locations && e.min_locations > 0) p.locations.resize(1);
      if (e.needs_count) p.count = 2;
      if (e.needs_trigger) p.trigger = make_prop("cond");
      if (e.needs_reaction) p.reaction = make_prop("act");
      const Formula f = instantiate_ltl(e.id, p);
      const int closure_bound = 1 << std::min<size_t>(20, atoms(f).size() + 14);
      CHECK(ltl_to_buchi(f).num_states() < closure_bound);
    }
  }

  TEST_CASE("HOA export carries the header and one block per state") {
    const BuchiAutomaton b = ltl_to_buchi(f_finally(atom("l1")));
    const std::string hoa = to_hoa(b);
    CHECK(hoa.find("HOA: v1\n") == 0);
    CHECK(hoa.find("States: 2") != std::string::npos);
    CHECK(hoa.find("Start: ") != std::string::npos);
    CHECK(hoa.find("Acceptance: 1 Inf(0)") != std::string::npos);
    CHECK(hoa.find("acc-name: Buchi") != std::string::npos);
    CHECK(hoa.find("\"l1\"") != std::string::npos);
    CHECK(hoa.find("--BODY--") != std::string::npos);
    CHECK(hoa.find("--END--") != std::string::npos);
  }
}
