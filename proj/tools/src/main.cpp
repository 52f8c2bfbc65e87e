#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace procm::cli;

namespace {

void schedule_options(CLI::App* cmd, ScheduleArgs& s) {
  cmd->add_option("--scheduler", s.scheduler, "fifo-tag or random")
      ->check(CLI::IsMember({"fifo-tag", "random"}))
      ->capture_default_str();
  cmd->add_option("--seed", s.seed, "Seed for the random scheduler")->capture_default_str();
  cmd->add_option("--step-limit", s.step_limit, "Maximum number of steps")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"procm: process machine toolchain"};
  app.set_version_flag("--version", std::string("procm ") + PROCM_VERSION);
  app.require_subcommand(1);

  RunArgs run;
  auto* c_run = app.add_subcommand("run", "Execute a program and print its visible actions");
  c_run->add_option("program", run.program, "Program file")->required();
  auto* script_opt = c_run->add_option("--script", run.script, "Input script file");
  c_run->add_flag("--interactive", run.interactive, "Prompt for each input on the terminal")->excludes(script_opt);
  schedule_options(c_run, run.schedule);

  ReportArgs report;
  report.exact_limit = default_exact_limit();
  auto* c_report = app.add_subcommand("report", "Per-output time, space and input-size costs");
  c_report->add_option("program", report.program, "Program file")->required();
  c_report->add_option("--script", report.script, "Input script file");
  c_report->add_option("--space", report.space, "observed or exact")
      ->check(CLI::IsMember({"observed", "exact"}))
      ->capture_default_str();
  c_report->add_option("--exact-limit", report.exact_limit, "Largest downset for exact space")->capture_default_str();
  c_report->add_flag("--json", report.json, "Structured output");
  schedule_options(c_report, report.schedule);

  CheckArgs check;
  check.exact_limit = default_exact_limit();
  auto* c_check = app.add_subcommand("check", "Check time and space bounds over a suite of scripts");
  c_check->add_option("program", check.program, "Program file")->required();
  c_check->add_option("suite", check.suite, "Directory of *.in scripts")->required();
  c_check->add_option("--time", check.time, "Time bound f(n)")->required();
  c_check->add_option("--space", check.space, "Space bound g(n)")->required();
  c_check->add_option("--space-mode", check.space_mode, "observed or exact")
      ->check(CLI::IsMember({"observed", "exact"}))
      ->capture_default_str();
  c_check->add_option("--exact-limit", check.exact_limit, "Largest downset for exact space")->capture_default_str();
  c_check->add_flag("--json", check.json, "Structured output");
  c_check->add_flag("--sequential", check.sequential, "Run the suite on one thread");
  schedule_options(c_check, check.schedule);

  EncodeArgs encode;
  auto* c_encode = app.add_subcommand("encode", "Compile a machine description into a program");
  c_encode->add_option("--kind", encode.kind, "tm|atm|ram|pram|circuit|rtm|server|offline|online")
      ->required()
      ->check(CLI::IsMember({"tm", "atm", "ram", "pram", "circuit", "rtm", "server", "offline", "online"}));
  c_encode->add_option("spec", encode.spec, "Machine description (or program for wrappers)")->required();
  c_encode->add_option("-o,--output", encode.output, "Output file");

  CompareArgs compare;
  auto* c_compare = app.add_subcommand("compare", "Weak bisimilarity of two programs or function tables (.fun)");
  c_compare->add_option("left", compare.left, "Program or .fun table")->required();
  c_compare->add_option("right", compare.right, "Program or .fun table")->required();
  c_compare->add_option("--inputs", compare.inputs, "Comma-separated input words offered to programs");
  c_compare->add_option("--state-limit", compare.state_limit, "Exploration bound")->capture_default_str();
  c_compare->add_flag("--div-sensitive", compare.div_sensitive, "Divergence-sensitive comparison");
  c_compare->add_option("--in", compare.in_channel, "Input channel of tables")->capture_default_str();
  c_compare->add_option("--out", compare.out_channel, "Output channel of tables")->capture_default_str();

  ExploreArgs explore;
  auto* c_explore = app.add_subcommand("explore", "Print the explored labelled transition system");
  c_explore->add_option("program", explore.program, "Program file")->required();
  c_explore->add_option("--inputs", explore.inputs, "Comma-separated input words");
  c_explore->add_option("--state-limit", explore.state_limit, "Exploration bound")->capture_default_str();
  c_explore->add_option("--depth", explore.depth, "Visible-depth bound");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  Streams io{std::cout, std::cerr, std::cin};
  if (c_run->parsed()) return cmd_run(run, io);
  if (c_report->parsed()) return cmd_report(report, io);
  if (c_check->parsed()) return cmd_check(check, io);
  if (c_encode->parsed()) return cmd_encode(encode, io);
  if (c_compare->parsed()) return cmd_compare(compare, io);
  return cmd_explore(explore, io);
}
