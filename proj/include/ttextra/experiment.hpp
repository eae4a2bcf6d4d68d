#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ttextra/diagnostics.hpp"
#include "ttextra/graph.hpp"
#include "ttextra/params.hpp"
#include "ttextra/problems.hpp"
#include "ttextra/solver.hpp"

namespace ttextra {

// Stable CLI exit-code contract.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInfeasible = 2;
inline constexpr int kExitNoConvergence = 3;
inline constexpr int kExitDiverged = 4;

struct GraphSpec {
  std::string type = "ring";  // ring | erdos_renyi
  int n = 5;
  double edge_prob = 0.5;
  std::uint64_t seed = 0;
};

struct ProblemSpec {
  std::string family = "quadratic";  // regularized_ls | welsch | quadratic
  int p = 1;
  int samples = 4;
  double mu = 0.1;
  double sigma = 1.0;
  std::uint64_t seed = 0;
};

/// Declarative experiment description parsed from JSON; unknown keys are
/// rejected so typos fail loudly.
struct ExperimentConfig {
  GraphSpec graph;
  ProblemSpec problem;
  std::string weight_scheme = "metropolis";
  std::optional<double> tau;
  SelectOverrides overrides;
  RunConfig run;
  std::optional<double> compare_alpha;
  std::optional<std::string> trace_csv_path;
  std::optional<std::string> summary_json_path;
};

ExperimentConfig parse_config(const std::string& json_text);
ExperimentConfig load_config(const std::string& path);

Graph make_graph(const GraphSpec& spec);
Problem make_problem(const ProblemSpec& spec, int n);

int cmd_select_params(const ExperimentConfig& cfg);
int cmd_run(const ExperimentConfig& cfg);
int cmd_compare(const ExperimentConfig& cfg);
int cmd_check_lemmas(const ExperimentConfig& cfg, const std::string& trace_csv_path);

}  // namespace ttextra
