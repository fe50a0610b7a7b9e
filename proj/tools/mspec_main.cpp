// Command-line front end: compiles mission files, checks formulas over
// generated worlds, synthesizes plans, matches corpora and runs the seeded
// experiment batteries.
//
// Exit codes: 0 success; 1 negative verdict (no plan / property violated /
// experiment property failed) unless --exit-zero; 2 usage or input errors.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "mspec/emit.hpp"
#include "mspec/experiments.hpp"
#include "mspec/matcher.hpp"
#include "mspec/mission.hpp"
#include "mspec/parse.hpp"
#include "mspec/trace.hpp"
#include "mspec/worldgen.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + out_path + "'");
  out << content;
}

struct FormulaSource {
  std::string mission_path;
  std::string formula_text;
  std::string logic = "ltl";

  // Adds --mission/--formula/--logic to a subcommand.
  void attach(CLI::App* cmd, bool with_logic = true) {
    auto* m = cmd->add_option("--mission,mission", mission_path,
                              "mission file (.mission)");
    auto* f = cmd->add_option("--formula", formula_text, "formula text");
    m->excludes(f);
    if (with_logic)
      cmd->add_option("--logic", logic, "ltl or ctl")
          ->check(CLI::IsMember({"ltl", "ctl"}));
  }

  bool has_input() const { return !mission_path.empty() || !formula_text.empty(); }

  mspec::Formula load(mspec::Logic want) const {
    if (!mission_path.empty()) {
      const mspec::Mission m = mspec::parse_mission(read_file(mission_path));
      return want == mspec::Logic::Ltl ? mspec::compile_ltl(m) : mspec::compile_ctl(m);
    }
    if (!formula_text.empty()) return mspec::parse_formula(formula_text, want);
    throw std::runtime_error("provide a mission file or --formula");
  }
};

mspec::TransitionSystem load_world(const std::string& path) {
  return mspec::to_transition_system(mspec::scenario_from_text(read_file(path)));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mission specification compiler and verification toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  // --- compile ---------------------------------------------------------------
  auto* compile = app.add_subcommand("compile", "compile a mission file to LTL/CTL");
  auto compile_src = std::make_shared<FormulaSource>();
  auto compile_fmt = std::make_shared<std::string>("plain");
  auto compile_out = std::make_shared<std::string>();
  compile->add_option("mission", compile_src->mission_path, "mission file")->required();
  compile->add_option("--logic", compile_src->logic, "ltl or ctl")
      ->check(CLI::IsMember({"ltl", "ctl"}));
  compile->add_option("--format", *compile_fmt, "plain, smv-ltl, smv-ctl or spin-ltl")
      ->check(CLI::IsMember({"plain", "smv-ltl", "smv-ctl", "spin-ltl"}));
  compile->add_option("--out", *compile_out, "output path (default stdout)");
  compile->callback([=]() {
    const mspec::Logic logic = mspec::parse_logic(compile_src->logic);
    const mspec::Formula f = compile_src->load(logic);
    write_output(*compile_out, mspec::emit(f, mspec::parse_format(*compile_fmt)) + "\n");
  });

  // --- emit-smv ----------------------------------------------------------------
  auto* smv = app.add_subcommand("emit-smv", "emit an SMV model with the mission specs");
  auto smv_src = std::make_shared<FormulaSource>();
  auto smv_world = std::make_shared<std::string>();
  auto smv_out = std::make_shared<std::string>();
  smv_src->attach(smv, /*with_logic=*/true);
  smv->add_option("--world", *smv_world,
                  "scenario file; omitted means free boolean inputs");
  smv->add_option("--out", *smv_out, "output path (default stdout)");
  smv->callback([=]() {
    std::vector<std::pair<mspec::Logic, mspec::Formula>> specs;
    if (!smv_src->mission_path.empty()) {
      const mspec::Mission m = mspec::parse_mission(read_file(smv_src->mission_path));
      specs.emplace_back(mspec::Logic::Ltl, mspec::compile_ltl(m));
      specs.emplace_back(mspec::Logic::Ctl, mspec::compile_ctl(m));
    } else {
      const mspec::Logic logic = mspec::parse_logic(smv_src->logic);
      specs.emplace_back(logic, smv_src->load(logic));
    }
    std::string text;
    if (smv_world->empty()) {
      text = mspec::emit_smv_props({}, specs);
    } else {
      text = mspec::emit_smv(load_world(*smv_world), specs);
    }
    write_output(*smv_out, text);
  });

  // --- plan --------------------------------------------------------------------
  auto* plan = app.add_subcommand("plan", "search a world for a plan satisfying the mission");
  auto plan_src = std::make_shared<FormulaSource>();
  auto plan_world = std::make_shared<std::string>();
  auto plan_out = std::make_shared<std::string>();
  auto plan_exit_zero = std::make_shared<bool>(false);
  plan_src->attach(plan, /*with_logic=*/false);
  plan->add_option("--world", *plan_world, "scenario file")->required();
  plan->add_option("--out", *plan_out, "output path (default stdout)");
  plan->add_flag("--exit-zero", *plan_exit_zero, "exit 0 even when no plan exists");
  plan->callback([=, &exit_code]() {
    const mspec::TransitionSystem ts = load_world(*plan_world);
    const mspec::Formula f = plan_src->load(mspec::Logic::Ltl);
    const auto found = mspec::find_plan(ts, f);
    if (found) {
      write_output(*plan_out, "plan: " + mspec::to_string(ts, *found) + "\n");
    } else {
      write_output(*plan_out, "no plan\n");
      if (!*plan_exit_zero) exit_code = 1;
    }
  });

  // --- check-ltl / check-ctl -----------------------------------------------------
  auto* chk_ltl = app.add_subcommand("check-ltl", "does the LTL property hold on all runs?");
  auto chk_ltl_src = std::make_shared<FormulaSource>();
  auto chk_ltl_world = std::make_shared<std::string>();
  auto chk_ltl_exit_zero = std::make_shared<bool>(false);
  chk_ltl_src->attach(chk_ltl, /*with_logic=*/false);
  chk_ltl->add_option("--world", *chk_ltl_world, "scenario file")->required();
  chk_ltl->add_flag("--exit-zero", *chk_ltl_exit_zero, "exit 0 on violation too");
  chk_ltl->callback([=, &exit_code]() {
    const mspec::TransitionSystem ts = load_world(*chk_ltl_world);
    const mspec::Formula f = chk_ltl_src->load(mspec::Logic::Ltl);
    const mspec::Verdict v = mspec::holds_universally(ts, f);
    if (v.holds) {
      std::cout << "holds\n";
    } else {
      std::cout << "violated";
      if (v.witness) std::cout << ", counterexample: " << to_string(ts, *v.witness);
      std::cout << "\n";
      if (!*chk_ltl_exit_zero) exit_code = 1;
    }
  });

  auto* chk_ctl = app.add_subcommand("check-ctl", "does the CTL property hold initially?");
  auto chk_ctl_src = std::make_shared<FormulaSource>();
  auto chk_ctl_world = std::make_shared<std::string>();
  auto chk_ctl_exit_zero = std::make_shared<bool>(false);
  chk_ctl_src->attach(chk_ctl, /*with_logic=*/false);
  chk_ctl->add_option("--world", *chk_ctl_world, "scenario file")->required();
  chk_ctl->add_flag("--exit-zero", *chk_ctl_exit_zero, "exit 0 on violation too");
  chk_ctl->callback([=, &exit_code]() {
    const mspec::TransitionSystem ts = load_world(*chk_ctl_world);
    const mspec::Formula f = chk_ctl_src->load(mspec::Logic::Ctl);
    const mspec::Verdict v = mspec::check_ctl(ts, f);
    std::cout << (v.holds ? "holds\n" : "violated\n");
    if (!v.holds && !*chk_ctl_exit_zero) exit_code = 1;
  });

  // --- match ---------------------------------------------------------------------
  auto* match = app.add_subcommand("match", "classify a corpus of formulas against the catalog");
  auto match_corpus_path = std::make_shared<std::string>();
  auto match_out = std::make_shared<std::string>();
  match->add_option("corpus", *match_corpus_path, "one formula per line, '#' comments")
      ->required();
  match->add_option("--out", *match_out, "output path (default stdout)");
  match->callback([=]() {
    const mspec::CorpusReport report = mspec::match_corpus(read_file(*match_corpus_path));
    write_output(*match_out, mspec::report_text(report));
  });

  // --- gen-world -------------------------------------------------------------------
  auto* gen = app.add_subcommand("gen-world", "generate a seeded grid scenario");
  auto gen_seed = std::make_shared<uint64_t>(0);
  auto gen_variant = std::make_shared<std::string>("adjacent");
  auto gen_wrap = std::make_shared<std::string>("lex");
  auto gen_reduced = std::make_shared<bool>(false);
  auto gen_out = std::make_shared<std::string>();
  gen->add_option("--seed", *gen_seed, "generator seed")->required();
  gen->add_option("--variant", *gen_variant, "adjacent or directed")
      ->check(CLI::IsMember({"adjacent", "directed"}));
  gen->add_option("--wrap", *gen_wrap, "directed wrap rule: lex, literal or none")
      ->check(CLI::IsMember({"lex", "literal", "none"}));
  gen->add_flag("--reduced", *gen_reduced, "3x3 reduced world");
  gen->add_option("--out", *gen_out, "output path (default stdout)");
  gen->callback([=]() {
    const mspec::Variant variant = *mspec::variant_by_name(*gen_variant);
    const mspec::WrapRule wrap = *mspec::wrap_by_name(*gen_wrap);
    const mspec::GridScenario sc =
        *gen_reduced ? mspec::generate_reduced_scenario(*gen_seed, variant, wrap)
                     : mspec::generate_scenario(*gen_seed, variant, wrap);
    write_output(*gen_out, mspec::to_text(sc));
  });

  // --- exp -----------------------------------------------------------------------
  auto* exp = app.add_subcommand("exp", "run a seeded experiment battery");
  auto exp_mode = std::make_shared<std::string>();
  auto exp_seed = std::make_shared<uint64_t>(0);
  auto exp_out = std::make_shared<std::string>();
  auto exp_exit_zero = std::make_shared<bool>(false);
  exp->add_option("--mode", *exp_mode, "exp4, exp5 or exp6")
      ->required()
      ->check(CLI::IsMember({"exp4", "exp5", "exp6"}));
  exp->add_option("--seed", *exp_seed, "base seed for the 12 scenarios")->required();
  exp->add_option("--out", *exp_out, "write the JSON report here");
  exp->add_flag("--exit-zero", *exp_exit_zero, "exit 0 even if the battery property fails");
  exp->callback([=, &exit_code]() {
    const mspec::RunReport report = mspec::run_experiment(*exp_mode, *exp_seed);
    std::cout << report.to_table();
    if (!exp_out->empty()) write_output(*exp_out, report.to_json());
    const bool failed = report.plans_failed_validation > 0 ||
                        report.disagreements > 0 || report.monotone_violations > 0;
    if (failed && !*exp_exit_zero) exit_code = 1;
  });

  // --- eval-trace ------------------------------------------------------------------
  auto* ev = app.add_subcommand("eval-trace", "evaluate a formula on a lasso trace");
  auto ev_formula = std::make_shared<std::string>();
  auto ev_trace = std::make_shared<std::string>();
  auto ev_exit_zero = std::make_shared<bool>(false);
  ev->add_option("--formula", *ev_formula, "LTL formula")->required();
  ev->add_option("--trace", *ev_trace, "e.g. \"l1 ; l2 | l3\" or \"stem: l1 loop: l3\"")
      ->required();
  ev->add_flag("--exit-zero", *ev_exit_zero, "exit 0 on UNSAT too");
  ev->callback([=, &exit_code]() {
    const mspec::Formula f = mspec::parse_formula(*ev_formula, mspec::Logic::Ltl);
    const mspec::LassoTrace t = mspec::parse_lasso(*ev_trace);
    const bool sat = mspec::eval_lasso(f, t);
    std::cout << (sat ? "SAT\n" : "UNSAT\n");
    if (!sat && !*ev_exit_zero) exit_code = 1;
  });

  // --- catalog ---------------------------------------------------------------------
  auto* cat = app.add_subcommand("catalog", "print the pattern catalog");
  auto cat_json = std::make_shared<bool>(false);
  auto cat_out = std::make_shared<std::string>();
  cat->add_flag("--json", *cat_json, "machine-readable dump");
  cat->add_option("--out", *cat_out, "output path (default stdout)");
  cat->callback([=]() {
    if (*cat_json) {
      write_output(*cat_out, mspec::catalog_json() + "\n");
      return;
    }
    std::ostringstream out;
    for (const auto& e : mspec::catalog()) {
      out << e.name << "  (" << e.category << ")\n";
      out << "  " << e.intent << "\n";
      if (!e.aliases.empty()) {
        out << "  aliases:";
        for (const auto& a : e.aliases) out << " " << a;
        out << "\n";
      }
      out << "\n";
    }
    write_output(*cat_out, out.str());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit 0; usage errors exit 2
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_code;
}
