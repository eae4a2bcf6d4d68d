#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ttextra/params.hpp"
#include "ttextra/problems.hpp"

namespace ttextra {

struct SolverState {
  StackedPoint x_curr;
  std::optional<StackedPoint> x_prev;  // absent before the first step
  StackedPoint lambda;                 // n x p dual
  StackedPoint y;                      // agent-form dual, equals A^T lambda
  long iter = 0;
};

enum class SolverForm { kAgent, kCompact, kBoth };

struct RunConfig {
  long max_iters = 10000;
  long record_stride = 1;
  double stop_tol_consensus = 1e-8;
  double stop_tol_stationarity = 1e-8;
  double stop_tol_step = 1e-10;
  std::uint64_t init_seed = 0;
  std::optional<StackedPoint> x0;  // overrides the seeded Gaussian start
  SolverForm form = SolverForm::kCompact;
};

/// Per-iteration diagnostics; one row of the trace CSV.
struct TraceRecord {
  long iter = 0;
  double f_value = 0.0;
  double l_rho_value = 0.0;
  double p_c_value = 0.0;
  double consensus_err = 0.0;
  double stationarity = 0.0;
  double step_norm = 0.0;
  double dual_step_norm = 0.0;
  double w_norm = 0.0;
  bool descent_ok = true;
};

enum class StopReason { kConverged, kMaxIters, kDiverged };

struct Trace {
  std::vector<TraceRecord> records;
  StopReason stop = StopReason::kMaxIters;
  long iterations = 0;
  long descent_violations = 0;
  double max_form_gap = 0.0;  // only populated when both forms are co-evolved
  StackedPoint x_final;
  StackedPoint lambda_final;

  std::string to_csv() const;
};

SolverState init_state(const Problem& pb, const MixingMatrix& wt, const MixingMatrix& w,
                       const Eigen::MatrixXd& a, double rho, const StackedPoint& x0);

/// One synchronous round of the agent-level update; each agent reads only
/// its own and its neighbors' rows of the snapshot.
SolverState tt_extra_step_agent(const SolverState& state, const Problem& pb,
                                const MixingMatrix& w, const MixingMatrix& wt,
                                double rho, double beta);

SolverState tt_extra_step_compact(const SolverState& state, const Problem& pb,
                                  const Eigen::MatrixXd& a, const MixingMatrix& wt,
                                  double rho, double beta);

/// Classic EXTRA in eliminated form; needs the full iterate history because
/// the update sums all past iterates.
StackedPoint extra_eliminated_step(const std::vector<StackedPoint>& history,
                                   const Problem& pb, const MixingMatrix& w,
                                   const MixingMatrix& wt, double alpha);

SolverState extra_primal_dual_step(const SolverState& state, const Problem& pb,
                                   const Eigen::MatrixXd& a, const MixingMatrix& wt,
                                   double alpha);

StackedPoint gaussian_start(int n, int p, std::uint64_t seed);

Trace run(const Problem& pb, const MixingMatrix& w, const MixingMatrix& wt,
          const Eigen::MatrixXd& a, const StepSizes& steps, const RunConfig& cfg);

}  // namespace ttextra
