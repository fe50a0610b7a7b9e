#include <doctest.h>

#include "mspec/emit.hpp"
#include "mspec/formula.hpp"
#include "mspec/parse.hpp"
#include "mspec/trace.hpp"
#include "test_support.hpp"

using namespace mspec;

namespace {
Formula atom(const char* name) { return f_atom(make_prop(name)); }
}  // namespace

TEST_SUITE("prop") {
  TEST_CASE("kind guessing: l<digits> location, a<digits>/act* action, rest condition") {
    CHECK(guess_kind("l1") == PropKind::Location);
    CHECK(guess_kind("l42") == PropKind::Location);
    CHECK(guess_kind("a1") == PropKind::Action);
    CHECK(guess_kind("act") == PropKind::Action);
    CHECK(guess_kind("action2") == PropKind::Action);
    CHECK(guess_kind("cond") == PropKind::Condition);
    CHECK(guess_kind("human_detected") == PropKind::Condition);
    CHECK(guess_kind("l") == PropKind::Condition);  // bare 'l' has no digits
  }

  TEST_CASE("identity ignores the kind, includes the robot") {
    CHECK(make_prop(PropKind::Location, "l1") == make_prop(PropKind::Condition, "l1"));
    CHECK(make_prop(PropKind::Location, "r1", "l1") != make_prop(PropKind::Location, "l1"));
    CHECK(make_prop(PropKind::Location, "r1", "l1").str() == "r1_l1");
    CHECK(make_prop("l1").str() == "l1");
  }

  TEST_CASE("props_of splits on blanks and commas") {
    const PropSet set = props_of("l1, cond act");
    CHECK(set.size() == 3);
    CHECK(set.count(make_prop("l1")) == 1);
    CHECK(set.count(make_prop("cond")) == 1);
    CHECK(set.count(make_prop("act")) == 1);
    CHECK(props_of("").empty());
  }
}

TEST_SUITE("formula") {
  TEST_CASE("and/or flatten and collapse") {
    const Formula f = f_and(f_and(atom("a"), atom("b")), atom("c"));
    CHECK(f.op == Op::And);
    CHECK(f.kids.size() == 3);

    CHECK(f_and({}) == f_true());
    CHECK(f_or({}) == f_false());
    CHECK(f_and({atom("a")}) == atom("a"));
    CHECK(f_or(f_or(atom("a"), atom("b")), f_or(atom("c"), atom("d"))).kids.size() == 4);
  }

  TEST_CASE("normalize restores the flattening invariants on hand-built trees") {
    Formula raw{Op::And, {}, {Formula{Op::And, {}, {atom("a"), atom("b")}}, atom("c")}};
    const Formula n = normalize(raw);
    CHECK(n.kids.size() == 3);
    CHECK(n == f_and(f_and(atom("a"), atom("b")), atom("c")));
  }

  TEST_CASE("path quantifiers require a temporal operator underneath") {
    CHECK_NOTHROW(f_forall(f_globally(atom("p"))));
    CHECK_THROWS_AS(f_forall(atom("p")), formula_error);
    CHECK_THROWS_AS(f_exists(f_and(atom("p"), atom("q"))), formula_error);
  }

  TEST_CASE("atoms collects every proposition once") {
    const Formula f = f_until(f_not(atom("l2")), f_and(atom("l1"), f_finally(atom("l2"))));
    const PropSet set = atoms(f);
    CHECK(set.size() == 2);
    CHECK(set.count(make_prop("l1")) == 1);
    CHECK(set.count(make_prop("l2")) == 1);
  }

  TEST_CASE("classification: is_ltl / is_temporal_free / is_ctl") {
    const Formula ltl = f_globally(f_implies(atom("p1"), atom("p2")));
    CHECK(is_ltl(ltl));
    CHECK(!is_temporal_free(ltl));
    CHECK(!is_ctl(ltl));  // temporal operator without a quantifier

    const Formula ctl = f_forall(f_globally(f_not(atom("l1"))));
    CHECK(!is_ltl(ctl));
    CHECK(is_ctl(ctl));

    const Formula init = f_and(atom("p1"), f_not(atom("p2")));
    CHECK(is_ltl(init));
    CHECK(is_temporal_free(init));
    CHECK(is_ctl(init));  // boolean state formulas are CTL too
  }

  TEST_CASE("validate_ctl rejects mixed nesting") {
    // A [ p U G q ]: the right operand is a bare path formula
    Formula bad{Op::ForAll, {}, {f_until(atom("p"), f_globally(atom("q")))}};
    CHECK_THROWS_AS(validate_ctl(bad), formula_error);
    // AG (EF p) nests fine
    CHECK_NOTHROW(validate_ctl(f_forall(f_globally(f_exists(f_finally(atom("p")))))));
  }

  TEST_CASE("compare is a total order consistent with equality") {
    const Formula a = atom("l1");
    const Formula b = f_finally(atom("l1"));
    CHECK(compare(a, a) == std::strong_ordering::equal);
    CHECK((compare(a, b) == std::strong_ordering::less) !=
          (compare(b, a) == std::strong_ordering::less));
    CHECK((a < b) != (b < a));
  }
}

TEST_SUITE("normal-forms") {
  TEST_CASE("expand_derived: F, W, G reduce to the until core") {
    CHECK(expand_derived(f_finally(atom("l1"))) == f_until(f_true(), atom("l1")));

    // l1 W l2 == (l1 U l2) | !(true U !l1)
    CHECK(expand_derived(f_wuntil(atom("l1"), atom("l2"))) ==
          f_or(f_until(atom("l1"), atom("l2")),
               f_not(f_until(f_true(), f_not(atom("l1"))))));

    // G(p1 -> p2) == !(true U !(!p1 | p2))
    CHECK(expand_derived(f_globally(f_implies(atom("p1"), atom("p2")))) ==
          f_not(f_until(f_true(), f_not(f_or(f_not(atom("p1")), atom("p2"))))));

    CHECK_THROWS_AS(expand_derived(f_forall(f_globally(atom("p")))), formula_error);
  }

  TEST_CASE("expand_derived preserves the trace semantics on random lassos") {
    SplitMix64 rng(20260825);
    const Formula g = f_globally(f_implies(atom("p1"), atom("p2")));
    const Formula g_core = expand_derived(g);
    for (int i = 0; i < 1000; ++i) {
      const LassoTrace t = testing::rand_lasso(rng);
      CHECK(eval_lasso(g, t) == eval_lasso(g_core, t));
    }
    for (int i = 0; i < 200; ++i) {
      const Formula f = testing::rand_formula(rng);
      const LassoTrace t = testing::rand_lasso(rng);
      CHECK(eval_lasso(f, t) == eval_lasso(expand_derived(f), t));
    }
  }

  TEST_CASE("nnf: duals and double negation") {
    // !(l1 U l2) == (!l2) W (!l1 & !l2)
    CHECK(nnf(f_not(f_until(atom("l1"), atom("l2")))) ==
          f_wuntil(f_not(atom("l2")), f_and(f_not(atom("l1")), f_not(atom("l2")))));
    CHECK(nnf(f_not(f_not(atom("l1")))) == atom("l1"));
    CHECK(nnf(f_not(f_next(atom("l1")))) == f_next(f_not(atom("l1"))));
    CHECK(nnf(f_not(f_finally(atom("p")))) == f_wuntil(f_not(atom("p")), f_false()));
  }

  TEST_CASE("nnf output stays inside {tt, ff, literal, &, |, X, U, W}") {
    SplitMix64 rng(7);
    auto well_formed = [](const Formula& f, auto&& self) -> bool {
      switch (f.op) {
        case Op::True:
        case Op::False:
        case Op::Atom:
          return true;
        case Op::Not:
          return f.kids[0].op == Op::Atom;
        case Op::And:
        case Op::Or:
        case Op::Next:
        case Op::Until:
        case Op::WeakUntil:
          break;
        default:
          return false;
      }
      for (const auto& k : f.kids)
        if (!self(k, self)) return false;
      return true;
    };
    for (int i = 0; i < 200; ++i) {
      const Formula f = testing::rand_formula(rng);
      const Formula n = nnf(f);
      CHECK(well_formed(n, well_formed));
      const LassoTrace t = testing::rand_lasso(rng);
      CHECK(eval_lasso(f, t) == eval_lasso(n, t));
    }
  }
}

TEST_SUITE("emit") {
  TEST_CASE("plain rendering is fully parenthesized") {
    CHECK(emit(f_and(f_finally(atom("l1")), f_finally(atom("l2"))), Format::Plain) ==
          "(F (l1)) & (F (l2))");
    CHECK(emit(f_not(atom("l1")), Format::Plain) == "!l1");
    CHECK(emit(f_not(f_finally(atom("l1"))), Format::Plain) == "! (F (l1))");
    CHECK(emit(f_forall(f_until(atom("p"), atom("q"))), Format::Plain) ==
          "A [ (p) U (q) ]");
  }

  TEST_CASE("smv dialects") {
    CHECK(emit(f_forall(f_globally(f_not(atom("l1")))), Format::SmvCtl) == "AG (!l1)");
    CHECK(emit(f_globally(f_iff(atom("p1"), f_next(atom("p2")))), Format::SmvLtl) ==
          "G ((p1) <-> (X (p2)))");
    CHECK(emit(f_true(), Format::SmvLtl) == "TRUE");
    // W is rewritten for targets without a weak until
    CHECK(emit(f_wuntil(atom("p"), atom("q")), Format::SmvLtl) ==
          "((p) U (q)) | (G (p))");
  }

  TEST_CASE("spin uses [] <> && ||") {
    CHECK(emit(f_globally(f_finally(atom("l1"))), Format::SpinLtl) == "[] (<> (l1))");
    CHECK(emit(f_and(atom("p"), atom("q")), Format::SpinLtl) == "(p) && (q)");
    CHECK(emit(f_or(atom("p"), atom("q")), Format::SpinLtl) == "(p) || (q)");
  }

  TEST_CASE("targets reject what they cannot express") {
    const Formula ctl = f_forall(f_globally(atom("p")));
    CHECK_THROWS_WITH_AS(emit(ctl, Format::SmvLtl),
                         doctest::Contains("unsupported operator for target"),
                         formula_error);
    CHECK_THROWS_AS(emit(ctl, Format::SpinLtl), formula_error);
    CHECK_THROWS_AS(emit(f_finally(atom("p")), Format::SmvCtl), formula_error);
    CHECK_THROWS_AS(emit(f_forall(f_wuntil(atom("p"), atom("q"))), Format::SmvCtl),
                    formula_error);
  }

  TEST_CASE("format names round-trip") {
    for (const auto fmt :
         {Format::Plain, Format::SmvLtl, Format::SmvCtl, Format::SpinLtl})
      CHECK(parse_format(format_name(fmt)) == fmt);
    CHECK_THROWS_AS(parse_format("smv"), formula_error);
  }
}

TEST_SUITE("parse") {
  TEST_CASE("grammar basics") {
    CHECK(parse_formula("F (l1 & F l2)") ==
          f_finally(f_and(atom("l1"), f_finally(atom("l2")))));
    CHECK(parse_formula("(! l2) U l1") == f_until(f_not(atom("l2")), atom("l1")));
    CHECK(parse_formula("true & !false") == f_and(f_true(), f_not(f_false())));
  }

  TEST_CASE("precedence: unary > U/W > & > | > -> > <->") {
    CHECK(parse_formula("a & b | c") == f_or(f_and(atom("a"), atom("b")), atom("c")));
    CHECK(parse_formula("!a U b") == f_until(f_not(atom("a")), atom("b")));
    CHECK(parse_formula("a U b & c") == f_and(f_until(atom("a"), atom("b")), atom("c")));
    // -> is right-associative
    CHECK(parse_formula("a -> b -> c") ==
          f_implies(atom("a"), f_implies(atom("b"), atom("c"))));
    // U is right-associative
    CHECK(parse_formula("a U b U c") ==
          f_until(atom("a"), f_until(atom("b"), atom("c"))));
    CHECK(parse_formula("a <-> b -> c") ==
          f_iff(atom("a"), f_implies(atom("b"), atom("c"))));
  }

  TEST_CASE("logic modes") {
    CHECK_THROWS_AS(parse_formula("A [ p U q ]", Logic::Ltl), parse_error);
    CHECK(parse_formula("A [ p U q ]", Logic::Ctl) ==
          f_forall(f_until(atom("p"), atom("q"))));
    CHECK(parse_formula("AG (!l1)", Logic::Ctl) == f_forall(f_globally(f_not(atom("l1")))));
    CHECK(parse_formula("EF p", Logic::Ctl) == f_exists(f_finally(atom("p"))));
    // bare temporal operators are not CTL state formulas
    CHECK_THROWS_AS(parse_formula("G p", Logic::Ctl), std::exception);
    CHECK(parse_logic("ltl") == Logic::Ltl);
    CHECK(parse_logic("ctl") == Logic::Ctl);
    CHECK_THROWS_AS(parse_logic("pctl"), formula_error);
  }

  TEST_CASE("errors carry a position") {
    try {
      parse_formula("l1 &");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.line == 1);
      CHECK(e.column >= 4);
    }
    CHECK_THROWS_AS(parse_formula("(l1"), parse_error);
    CHECK_THROWS_AS(parse_formula(""), parse_error);
    CHECK_THROWS_AS(parse_formula("l1 l2"), parse_error);
  }

  TEST_CASE("parse inverts emit on random formulas") {
    SplitMix64 rng(31337);
    for (int i = 0; i < 200; ++i) {
      const Formula f = testing::rand_formula(rng);
      CHECK(parse_formula(emit(f, Format::Plain)) == f);
    }
  }
}
