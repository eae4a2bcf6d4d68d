#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ttextra/experiment.hpp"

int main(int argc, char** argv) {
  CLI::App app{"TT-EXTRA decentralized optimization toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string trace_path;
  std::string override_json;

  auto add_config = [&](CLI::App* sub) {
    sub->add_option("config", config_path, "experiment config JSON")->required();
  };

  CLI::App* select = app.add_subcommand(
      "select-params", "run the sequential parameter selection and validate it");
  add_config(select);
  CLI::App* run_cmd = app.add_subcommand("run", "run TT-EXTRA and emit a trace");
  add_config(run_cmd);
  CLI::App* compare = app.add_subcommand(
      "compare", "run TT-EXTRA and EXTRA variants from a shared start");
  add_config(compare);
  CLI::App* check = app.add_subcommand(
      "check-lemmas", "replay a run and verify the descent inequalities");
  add_config(check);
  check->add_option("trace", trace_path, "trace CSV produced by run")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ttextra::kExitUsage;
  }

  try {
    const ttextra::ExperimentConfig cfg = ttextra::load_config(config_path);
    if (select->parsed()) return ttextra::cmd_select_params(cfg);
    if (run_cmd->parsed()) return ttextra::cmd_run(cfg);
    if (compare->parsed()) return ttextra::cmd_compare(cfg);
    if (check->parsed()) return ttextra::cmd_check_lemmas(cfg, trace_path);
  } catch (const ttextra::InfeasibleParameterError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ttextra::kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return ttextra::kExitUsage;
  }
  return ttextra::kExitUsage;
}
