#pragma once

#include <string>
#include <vector>

#include "ttextra/params.hpp"
#include "ttextra/problems.hpp"

namespace ttextra {

/// Weight matrices and scalar coefficient of the potential function.
struct PotentialConstants {
  Eigen::MatrixXd c1;  // beta I - rho (W_tilde - W)
  Eigen::MatrixXd c2;  // rho (I - W_tilde - (W_tilde - W))
  double kappa = 0.0;  // coefficient of ||x^{r+1} - x^r||^2
  double dual_coeff = 0.0;   // (1 + 2 rho) / (rho^2 (1 - lambda2))
  double c2_core_norm = 0.0; // ||I - W_tilde - (W_tilde - W)||
};

PotentialConstants make_potential_constants(const MixingMatrix& w, const MixingMatrix& wt,
                                            const StepSizes& steps);

double augmented_lagrangian(const Problem& pb, const StackedPoint& x,
                            const StackedPoint& lambda, double rho,
                            const MixingMatrix& wt, const Eigen::MatrixXd& a);

double potential(const Problem& pb, const StackedPoint& x_next, const StackedPoint& x_curr,
                 const StackedPoint& lambda_next, const StepSizes& steps,
                 const PotentialConstants& consts, const Eigen::MatrixXd& a);

double consensus_error(const StackedPoint& x);

/// Euclidean norm of the summed per-agent gradients (a p-vector).
double stationarity(const Problem& pb, const StackedPoint& x);

/// Three consecutive iterates plus the two dual iterates between them.
struct IterateWindow {
  StackedPoint x_before;  // x^{r-1}
  StackedPoint x_curr;    // x^r
  StackedPoint x_next;    // x^{r+1}
  StackedPoint lambda_curr;
  StackedPoint lambda_next;
};

struct LemmaSlacks {
  double lemma51 = 0.0;
  double lemma52 = 0.0;
  double lemma53 = 0.0;
};

struct LemmaReport {
  std::vector<double> lemma51;
  std::vector<double> lemma52;
  std::vector<double> lemma53;
  double min_slack = 0.0;

  std::string to_json() const;
};

/// Signed slack (right side minus left side) of each descent inequality on
/// one window; all three must stay above -1e-9 along feasible runs.
LemmaSlacks check_descent_lemmas(const IterateWindow& window, const Problem& pb,
                                 const StepSizes& steps, const PotentialConstants& consts,
                                 const MixingMatrix& w, const MixingMatrix& wt,
                                 const Eigen::MatrixXd& a);

}  // namespace ttextra
