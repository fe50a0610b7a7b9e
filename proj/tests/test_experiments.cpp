#include <doctest.h>

#include <regex>

#include "mspec/experiments.hpp"

using namespace mspec;

namespace {

// Timing is wall-clock and therefore the only nondeterministic output byte;
// strip it before comparing two runs.
std::string strip_ms(const std::string& json) {
  static const std::regex ms_field(R"("[A-Za-z_]*ms"\s*:\s*[0-9.eE+-]+)");
  return std::regex_replace(json, ms_field, "\"ms\": 0");
}

}  // namespace

TEST_SUITE("experiments") {
  TEST_CASE("unknown modes are rejected") {
    CHECK_THROWS_AS(run_experiment("exp7", 1), std::invalid_argument);
    CHECK(run_experiment("exp4", 3).mode == "exp4");
  }

  TEST_CASE("plan search is deterministic and shaped like the battery") {
    const RunReport a = run_exp4(3);
    const RunReport b = run_exp4(3);
    REQUIRE(a.records.size() == 120);  // 12 scenarios x 10 missions
    CHECK(a.to_table() == b.to_table());
    CHECK(strip_ms(a.to_json()) == strip_ms(b.to_json()));

    REQUIRE(a.tally.size() == 10);
    int top_total = 0;
    for (const auto& row : a.tally) {
      CHECK(row.top + row.bottom == 12);
      top_total += row.top;
    }
    CHECK(a.plans_validated == top_total);
    CHECK(a.plans_failed_validation == 0);
    for (const auto& rec : a.records) {
      CHECK((rec.variant == "adjacent" || rec.variant == "directed"));
      if (rec.plan_found) {
        CHECK(rec.plan != "");
        CHECK(rec.plan_validated);
      } else {
        CHECK(rec.plan == "");
      }
    }
  }

  TEST_CASE("verdict comparison tallies agreements") {
    const RunReport r = run_exp5(3);
    REQUIRE(r.records.size() == 120);
    CHECK(r.agreements + r.disagreements == 120);
    for (const auto& rec : r.records) CHECK(rec.agree == (rec.ltl_holds == rec.ctl_holds));
  }

  TEST_CASE("relaxation comparison records both verdicts") {
    const RunReport r = run_exp6(3);
    REQUIRE(!r.records.empty());
    int gains = 0, violations = 0;
    for (const auto& rec : r.records) {
      if (rec.plan_found && !rec.relaxed_plan_found) ++violations;
      if (!rec.plan_found && rec.relaxed_plan_found) ++gains;
    }
    CHECK(r.monotone_violations == violations);
    CHECK(r.strict_gains == gains);
  }
}
