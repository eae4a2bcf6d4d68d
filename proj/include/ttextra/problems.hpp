#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace ttextra {

/// Stacked decision variable: row i is agent i's local copy.
using StackedPoint = Eigen::MatrixXd;  // n x p

struct AgentObjective {
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> grad;
};

/// Collection of n smooth per-agent objectives; each f_i maps R^p to
/// non-negative reals and the stacked objective is l-smooth.
struct Problem {
  int n = 0;
  int p = 0;
  std::vector<AgentObjective> agents;
  double l = 0.0;
  bool l_is_analytic = false;
  std::optional<Eigen::VectorXd> minimizer;  // closed form, quadratic family only
};

/// f_i(x) = 0.5 ||A_i x - b_i||^2 + mu * sum_d x_d^2 / (1 + x_d^2).
/// Non-convex whenever mu > 0; analytic l = max_i ||A_i^T A_i|| + 2 mu.
Problem make_regularized_ls(int n, int p, int samples_per_agent, double mu,
                            std::uint64_t seed);

/// Welsch robust regression: f_i(x) = sum_k (1 - exp(-(a_k^T x - y_k)^2 / sigma^2)).
/// Smoothness constant is estimated empirically.
Problem make_welsch_regression(int n, int p, int samples_per_agent, double sigma,
                               std::uint64_t seed);

/// f_i(x) = 0.5 (x - m_i)^T Q_i (x - m_i) with Q_i symmetric positive definite.
/// Stores the closed-form minimizer of the aggregate objective.
Problem make_convex_quadratic(int n, int p, std::uint64_t seed);

std::pair<Eigen::VectorXd, double> evaluate(const Problem& pb, const StackedPoint& x);

StackedPoint gradient(const Problem& pb, const StackedPoint& x);

double estimate_smoothness(const Problem& pb, int trials, double radius,
                           std::uint64_t seed);

}  // namespace ttextra
