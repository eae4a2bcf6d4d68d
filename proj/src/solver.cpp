#include "ttextra/solver.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ttextra/diagnostics.hpp"

namespace ttextra {

namespace {

void check_stacked_shape(const Problem& pb, const StackedPoint& x) {
  if (x.rows() != pb.n || x.cols() != pb.p)
    throw std::invalid_argument("solver: stacked point shape mismatch");
}

}  // namespace

SolverState init_state(const Problem& pb, const MixingMatrix& wt, const MixingMatrix& w,
                       const Eigen::MatrixXd& a, double rho, const StackedPoint& x0) {
  check_stacked_shape(pb, x0);
  if (wt.n() != pb.n || w.n() != pb.n || a.rows() != pb.n)
    throw std::invalid_argument("init_state: mixing dimension mismatch");
  SolverState state;
  state.x_curr = x0;
  state.y = rho * (wt.entries - w.entries) * x0;
  state.lambda = rho * a * x0;
  state.iter = 0;
  return state;
}

SolverState tt_extra_step_agent(const SolverState& state, const Problem& pb,
                                const MixingMatrix& w, const MixingMatrix& wt,
                                double rho, double beta) {
  const int n = pb.n;
  const int p = pb.p;
  SolverState next = state;
  next.x_curr.resize(n, p);

  // Each agent reads only its own and its neighbors' rows of the snapshot.
  for (int i = 0; i < n; ++i) {
    Eigen::RowVectorXd mixed = wt.entries(i, i) * state.x_curr.row(i);
    for (int j : wt.graph.neighbors(i)) mixed += wt.entries(i, j) * state.x_curr.row(j);
    const Eigen::VectorXd grad_i = pb.agents[i].grad(state.x_curr.row(i).transpose());
    next.x_curr.row(i) = (1.0 - rho / beta) * state.x_curr.row(i) -
                         grad_i.transpose() / beta + (rho / beta) * mixed -
                         state.y.row(i) / beta;
  }
  for (int i = 0; i < n; ++i) {
    Eigen::RowVectorXd mixed =
        (wt.entries(i, i) - w.entries(i, i)) * next.x_curr.row(i);
    for (int j : wt.graph.neighbors(i))
      mixed += (wt.entries(i, j) - w.entries(i, j)) * next.x_curr.row(j);
    next.y.row(i) = state.y.row(i) + rho * mixed;
  }
  next.x_prev = state.x_curr;
  next.iter = state.iter + 1;
  return next;
}

SolverState tt_extra_step_compact(const SolverState& state, const Problem& pb,
                                  const Eigen::MatrixXd& a, const MixingMatrix& wt,
                                  double rho, double beta) {
  const int n = pb.n;
  const Eigen::MatrixXd i_minus_wt = Eigen::MatrixXd::Identity(n, n) - wt.entries;
  SolverState next = state;
  next.x_curr = state.x_curr -
                (gradient(pb, state.x_curr) + a.transpose() * state.lambda +
                 rho * i_minus_wt * state.x_curr) /
                    beta;
  next.lambda = state.lambda + rho * a * next.x_curr;
  next.y = a.transpose() * next.lambda;
  next.x_prev = state.x_curr;
  next.iter = state.iter + 1;
  return next;
}

StackedPoint extra_eliminated_step(const std::vector<StackedPoint>& history,
                                   const Problem& pb, const MixingMatrix& w,
                                   const MixingMatrix& wt, double alpha) {
  if (history.empty())
    throw std::invalid_argument("extra_eliminated_step: history must contain x^0");
  const StackedPoint& x_k = history.back();
  StackedPoint next = w.entries * x_k - alpha * gradient(pb, x_k);
  const Eigen::MatrixXd diff = wt.entries - w.entries;
  for (std::size_t t = 0; t + 1 < history.size(); ++t) next -= diff * history[t];
  return next;
}

SolverState extra_primal_dual_step(const SolverState& state, const Problem& pb,
                                   const Eigen::MatrixXd& a, const MixingMatrix& wt,
                                   double alpha) {
  const int n = pb.n;
  const Eigen::MatrixXd i_minus_wt = Eigen::MatrixXd::Identity(n, n) - wt.entries;
  SolverState next = state;
  next.x_curr = state.x_curr - alpha * gradient(pb, state.x_curr) -
                a.transpose() * state.lambda - i_minus_wt * state.x_curr;
  next.lambda = state.lambda + a * next.x_curr;
  next.y = a.transpose() * next.lambda;
  next.x_prev = state.x_curr;
  next.iter = state.iter + 1;
  return next;
}

StackedPoint gaussian_start(int n, int p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  StackedPoint x(n, p);
  for (int i = 0; i < n; ++i)
    for (int d = 0; d < p; ++d) x(i, d) = gauss(rng);
  return x;
}

std::string Trace::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "iter,f,L_rho,P_c,consensus_err,stationarity,step_norm,dual_step_norm,"
        "w_norm,descent_ok\n";
  for (const auto& r : records) {
    os << r.iter << "," << r.f_value << "," << r.l_rho_value << "," << r.p_c_value
       << "," << r.consensus_err << "," << r.stationarity << "," << r.step_norm << ","
       << r.dual_step_norm << "," << r.w_norm << "," << (r.descent_ok ? 1 : 0) << "\n";
  }
  return os.str();
}

Trace run(const Problem& pb, const MixingMatrix& w, const MixingMatrix& wt,
          const Eigen::MatrixXd& a, const StepSizes& steps, const RunConfig& cfg) {
  if (cfg.max_iters < 1) throw std::invalid_argument("run: max_iters must be at least 1");
  if (cfg.record_stride < 1)
    throw std::invalid_argument("run: record_stride must be at least 1");
  if (cfg.stop_tol_consensus < 0.0 || cfg.stop_tol_stationarity < 0.0 ||
      cfg.stop_tol_step < 0.0)
    throw std::invalid_argument("run: stop tolerances must be non-negative");

  const StackedPoint x0 =
      cfg.x0 ? *cfg.x0 : gaussian_start(pb.n, pb.p, cfg.init_seed);
  check_stacked_shape(pb, x0);

  const PotentialConstants consts = make_potential_constants(w, wt, steps);
  SolverState state = init_state(pb, wt, w, a, steps.rho, x0);
  SolverState agent_state = state;  // co-evolved when both forms are requested

  Trace trace;
  auto make_record = [&](const SolverState& s, double p_c, double step_norm,
                         double dual_step_norm, double w_norm, bool descent_ok) {
    TraceRecord rec;
    rec.iter = s.iter;
    rec.f_value = evaluate(pb, s.x_curr).second;
    rec.l_rho_value = augmented_lagrangian(pb, s.x_curr, s.lambda, steps.rho, wt, a);
    rec.p_c_value = p_c;
    rec.consensus_err = consensus_error(s.x_curr);
    rec.stationarity = stationarity(pb, s.x_curr);
    rec.step_norm = step_norm;
    rec.dual_step_norm = dual_step_norm;
    rec.w_norm = w_norm;
    rec.descent_ok = descent_ok;
    return rec;
  };

  double p_c_prev = potential(pb, state.x_curr, state.x_curr, state.lambda, steps,
                              consts, a);
  trace.records.push_back(make_record(state, p_c_prev, 0.0, 0.0, 0.0, true));

  std::optional<StackedPoint> prev_step;  // x^r - x^{r-1}
  for (long r = 0; r < cfg.max_iters; ++r) {
    SolverState next;
    if (cfg.form == SolverForm::kAgent) {
      next = tt_extra_step_agent(state, pb, w, wt, steps.rho, steps.beta);
      next.lambda = state.lambda + steps.rho * a * next.x_curr;
    } else {
      next = tt_extra_step_compact(state, pb, a, wt, steps.rho, steps.beta);
      if (cfg.form == SolverForm::kBoth) {
        agent_state = tt_extra_step_agent(agent_state, pb, w, wt, steps.rho, steps.beta);
        trace.max_form_gap =
            std::max(trace.max_form_gap,
                     (agent_state.x_curr - next.x_curr).cwiseAbs().maxCoeff());
      }
    }

    if (!next.x_curr.allFinite() || !next.lambda.allFinite()) {
      trace.stop = StopReason::kDiverged;
      trace.iterations = state.iter;
      trace.x_final = state.x_curr;
      trace.lambda_final = state.lambda;
      return trace;
    }

    const StackedPoint step = next.x_curr - state.x_curr;
    const double step_norm = step.norm();
    const double dual_step_norm = (next.lambda - state.lambda).norm();
    const double w_norm = prev_step ? (step - *prev_step).norm() : 0.0;

    const double p_c =
        potential(pb, next.x_curr, state.x_curr, next.lambda, steps, consts, a);
    // The monotone-descent guarantee starts once a full window exists.
    const bool descent_ok = next.iter < 2 || p_c <= p_c_prev + 1e-12;
    if (!descent_ok) ++trace.descent_violations;
    p_c_prev = p_c;

    prev_step = step;
    state = std::move(next);

    const bool converged = consensus_error(state.x_curr) <= cfg.stop_tol_consensus &&
                           stationarity(pb, state.x_curr) <= cfg.stop_tol_stationarity &&
                           step_norm <= cfg.stop_tol_step;
    if (state.iter % cfg.record_stride == 0 || converged || r + 1 == cfg.max_iters)
      trace.records.push_back(
          make_record(state, p_c, step_norm, dual_step_norm, w_norm, descent_ok));

    if (converged) {
      trace.stop = StopReason::kConverged;
      trace.iterations = state.iter;
      trace.x_final = state.x_curr;
      trace.lambda_final = state.lambda;
      return trace;
    }
  }

  trace.stop = StopReason::kMaxIters;
  trace.iterations = state.iter;
  trace.x_final = state.x_curr;
  trace.lambda_final = state.lambda;
  return trace;
}

}  // namespace ttextra
