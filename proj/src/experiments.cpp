#include "mspec/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "mspec/trace.hpp"

namespace mspec {

namespace {

double now_ms() {
  using namespace std::chrono;
  return duration<double, std::milli>(steady_clock::now().time_since_epoch()).count();
}

std::vector<MissionTally> tally_by_mission(const std::vector<TaskRecord>& records,
                                           bool (*is_top)(const TaskRecord&)) {
  std::vector<MissionTally> out;
  for (const auto& r : records) {
    auto it = std::find_if(out.begin(), out.end(),
                           [&](const MissionTally& t) { return t.mission == r.mission; });
    if (it == out.end()) {
      out.push_back(MissionTally{r.mission, r.patterns, 0, 0});
      it = out.end() - 1;
    }
    ++(is_top(r) ? it->top : it->bottom);
  }
  return out;
}

template <class Body>
RunReport run_batch(const std::string& mode, uint64_t base_seed, bool starred_only,
                    Body body) {
  RunReport report;
  report.mode = mode;
  report.base_seed = base_seed;
  const auto scenarios = experiment_scenarios(base_seed);
  const auto missions = mission_suite();
  for (size_t si = 0; si < scenarios.size(); ++si) {
    const TransitionSystem ts = to_transition_system(scenarios[si]);
    for (const auto& m : missions) {
      if (starred_only && !m.has_starred()) continue;
      TaskRecord rec;
      rec.scenario = static_cast<int>(si);
      rec.scenario_seed = scenarios[si].seed;
      rec.variant = to_string(scenarios[si].variant);
      rec.mission = m.name;
      rec.patterns = m.summary;
      const double t0 = now_ms();
      body(ts, m, rec, report);
      rec.ms = now_ms() - t0;
      report.records.push_back(std::move(rec));
    }
  }
  return report;
}

}  // namespace

RunReport run_exp4(uint64_t base_seed) {
  RunReport report = run_batch(
      "exp4", base_seed, false,
      [](const TransitionSystem& ts, const MissionSpec& m, TaskRecord& rec,
         RunReport& rep) {
        const Formula f = m.ltl();
        const auto plan = find_plan(ts, f);
        rec.plan_found = plan.has_value();
        if (plan) {
          validate_plan(ts, *plan);
          rec.plan = to_string(ts, *plan);
          rec.plan_validated = eval_lasso(f, plan_trace(ts, *plan));
          ++(rec.plan_validated ? rep.plans_validated : rep.plans_failed_validation);
        }
      });
  report.tally = tally_by_mission(report.records,
                                  [](const TaskRecord& r) { return r.plan_found; });
  return report;
}

RunReport run_exp5(uint64_t base_seed) {
  RunReport report = run_batch(
      "exp5", base_seed, false,
      [](const TransitionSystem& ts, const MissionSpec& m, TaskRecord& rec,
         RunReport& rep) {
        rec.ltl_holds = holds_universally(ts, m.ltl()).holds;
        rec.ctl_holds = check_ctl(ts, m.ctl()).holds;
        rec.agree = rec.ltl_holds == rec.ctl_holds;
        ++(rec.agree ? rep.agreements : rep.disagreements);
      });
  report.tally = tally_by_mission(report.records,
                                  [](const TaskRecord& r) { return r.ltl_holds; });
  return report;
}

RunReport run_exp6(uint64_t base_seed) {
  RunReport report = run_batch(
      "exp6", base_seed, true,
      [](const TransitionSystem& ts, const MissionSpec& m, TaskRecord& rec,
         RunReport& rep) {
        const auto full = find_plan(ts, m.ltl());
        const auto relaxed = find_plan(ts, m.relaxed_ltl());
        rec.plan_found = full.has_value();
        if (full) rec.plan = to_string(ts, *full);
        rec.relaxed_plan_found = relaxed.has_value();
        if (relaxed) rec.relaxed_plan = to_string(ts, *relaxed);
        if (rec.plan_found && !rec.relaxed_plan_found) ++rep.monotone_violations;
        if (!rec.plan_found && rec.relaxed_plan_found) ++rep.strict_gains;
      });
  report.tally = tally_by_mission(
      report.records, [](const TaskRecord& r) { return r.relaxed_plan_found; });
  return report;
}

RunReport run_experiment(const std::string& mode, uint64_t base_seed) {
  if (mode == "exp4") return run_exp4(base_seed);
  if (mode == "exp5") return run_exp5(base_seed);
  if (mode == "exp6") return run_exp6(base_seed);
  throw std::invalid_argument("unknown experiment mode '" + mode +
                              "' (expected exp4, exp5 or exp6)");
}

std::string RunReport::to_json() const {
  nlohmann::json j;
  j["mode"] = mode;
  j["base_seed"] = base_seed;
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& r : records) {
    nlohmann::json e{{"scenario", r.scenario},
                     {"seed", r.scenario_seed},
                     {"variant", r.variant},
                     {"mission", r.mission},
                     {"patterns", r.patterns},
                     {"timing_ms", r.ms}};
    if (mode == "exp5") {
      e["ltl_holds"] = r.ltl_holds;
      e["ctl_holds"] = r.ctl_holds;
      e["agree"] = r.agree;
    } else {
      e["plan_found"] = r.plan_found;
      if (r.plan_found) e["plan"] = r.plan;
      if (mode == "exp4") e["plan_validated"] = r.plan_validated;
      if (mode == "exp6") {
        e["relaxed_plan_found"] = r.relaxed_plan_found;
        if (r.relaxed_plan_found) e["relaxed_plan"] = r.relaxed_plan;
      }
    }
    recs.push_back(std::move(e));
  }
  j["records"] = std::move(recs);

  nlohmann::json tal = nlohmann::json::array();
  for (const auto& t : tally)
    tal.push_back({{"mission", t.mission},
                   {"patterns", t.patterns},
                   {"top", t.top},
                   {"bottom", t.bottom}});
  j["tally"] = std::move(tal);

  if (mode == "exp4") {
    j["plans_validated"] = plans_validated;
    j["plans_failed_validation"] = plans_failed_validation;
  } else if (mode == "exp5") {
    j["agreements"] = agreements;
    j["disagreements"] = disagreements;
  } else {
    j["monotone_violations"] = monotone_violations;
    j["strict_gains"] = strict_gains;
  }
  return j.dump(2) + "\n";
}

std::string RunReport::to_table() const {
  std::ostringstream out;
  out << mode << " base-seed " << base_seed << "\n";
  out << "mission  top  bottom  patterns\n";
  for (const auto& t : tally) {
    out << "  " << t.mission;
    out << std::string(t.mission.size() < 7 ? 7 - t.mission.size() : 1, ' ');
    out << t.top << "    " << t.bottom << "     " << t.patterns << "\n";
  }
  if (mode == "exp4")
    out << "plans validated " << plans_validated << ", failed validation "
        << plans_failed_validation << "\n";
  else if (mode == "exp5")
    out << "ltl/ctl agreements " << agreements << ", disagreements " << disagreements
        << "\n";
  else
    out << "monotone violations " << monotone_violations << ", plans found only after "
        << "relaxation " << strict_gains << "\n";
  return out.str();
}

}  // namespace mspec
