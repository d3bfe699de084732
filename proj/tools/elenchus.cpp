#include <chrono>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "elenchus/driver.hpp"
#include "elenchus/oracle.hpp"

namespace {

using elenchus::PreferDefense;
using elenchus::RuleVariant;

struct CommonFlags {
  std::string ruleset = "e";
  bool no_repeats = true;
  std::string prefer_defense = "auto";
  int depth = 30;
  double timeout = 60.0;
  std::string include_dir;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--ruleset", flags.ruleset, "Structural ruleset: d or e")
      ->check(CLI::IsMember({"d", "e"}))
      ->capture_default_str();
  cmd->add_flag("--no-repeats,!--repeats", flags.no_repeats,
                "Forbid either player from repeating a move (default on)");
  cmd->add_option("--prefer-defense", flags.prefer_defense,
                  "off | heuristic | strict | auto (strict when quantifier-free)")
      ->check(CLI::IsMember({"off", "heuristic", "strict", "auto"}))
      ->capture_default_str();
  cmd->add_option("--depth", flags.depth, "Dialogue depth limit")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--timeout", flags.timeout, "Time limit in seconds (per problem)")
      ->capture_default_str();
  cmd->add_option("--include-dir", flags.include_dir,
                  "Root directory for include(...) resolution");
}

elenchus::driver::Options to_options(const CommonFlags& flags) {
  elenchus::driver::Options options;
  options.ruleset.variant = flags.ruleset == "d" ? RuleVariant::D : RuleVariant::E;
  options.ruleset.no_repeats = flags.no_repeats;
  if (flags.prefer_defense == "off") options.prefer_defense = PreferDefense::Off;
  else if (flags.prefer_defense == "heuristic") options.prefer_defense = PreferDefense::Heuristic;
  else if (flags.prefer_defense == "strict") options.prefer_defense = PreferDefense::Strict;
  options.depth_limit = flags.depth;
  options.time_limit =
      std::chrono::milliseconds(static_cast<long>(flags.timeout * 1000.0));
  options.include_dir = flags.include_dir;
  return options;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dialogue-game theorem prover for intuitionistic first-order logic"};
  app.require_subcommand(1);

  // prove
  auto* prove = app.add_subcommand("prove", "Decide a single TPTP problem");
  std::string prove_path;
  prove->add_option("file", prove_path, "TPTP problem file")->required();
  CommonFlags prove_flags;
  add_common(prove, prove_flags);
  bool trace = false;
  prove->add_flag("--trace", trace, "Stream explored moves to stdout");
  std::string emit;
  prove->add_option("--emit-strategy", emit, "Write the winning strategy as dot or text")
      ->check(CLI::IsMember({"dot", "text"}));
  std::string strategy_out;
  prove->add_option("--strategy-out", strategy_out,
                    "Strategy output file (default <problem>.strategy.<ext>)");

  // batch
  auto* batch = app.add_subcommand("batch", "Run a directory of TPTP problems");
  std::string batch_dir;
  batch->add_option("dir", batch_dir, "Directory containing *.p files")->required();
  CommonFlags batch_flags;
  add_common(batch, batch_flags);
  std::string csv_out = "results.csv";
  batch->add_option("--out", csv_out, "CSV output path")->capture_default_str();
  int jobs = 1;
  batch->add_option("--jobs", jobs, "Concurrent problems")->check(CLI::PositiveNumber);

  // oracle (debugging aid)
  auto* oracle_cmd = app.add_subcommand("oracle", "Decide a propositional formula directly");
  oracle_cmd->group("");  // hidden
  std::string oracle_formula;
  oracle_cmd->add_option("--formula", oracle_formula, "Formula in TPTP syntax")->required();
  int kripke_worlds = 0;
  oracle_cmd->add_option("--kripke", kripke_worlds,
                         "Also search for a countermodel with up to N worlds");

  CLI11_PARSE(app, argc, argv);

  try {
    if (prove->parsed()) {
      auto options = to_options(prove_flags);
      options.trace = trace;
      if (emit == "dot") options.emit = elenchus::driver::EmitFormat::Dot;
      if (emit == "text") options.emit = elenchus::driver::EmitFormat::Text;
      options.strategy_out = strategy_out;
      auto report = elenchus::driver::prove_file(prove_path, options, std::cout, std::cerr);
      return elenchus::driver::exit_code(report.status);
    }
    if (batch->parsed()) {
      auto options = to_options(batch_flags);
      elenchus::driver::run_batch(batch_dir, options, options.time_limit, csv_out,
                                  std::cout, jobs);
      return 0;
    }
    if (oracle_cmd->parsed()) {
      elenchus::Formula f = elenchus::tptp::parse_formula(oracle_formula);
      auto verdict = elenchus::oracle::decide_intuitionistic(f);
      std::cout << (verdict == elenchus::oracle::Validity::Valid ? "Valid" : "Invalid")
                << "\n";
      if (kripke_worlds > 0) {
        auto check = elenchus::oracle::check_bounded_kripke(f, kripke_worlds);
        if (check.countermodel)
          std::cout << "countermodel: " << check.countermodel->to_string() << "\n";
        else
          std::cout << "no countermodel with up to " << kripke_worlds << " world(s)\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
