#include "ttextra/problems.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace ttextra {

namespace {

void check_positive_counts(int n, int p, int samples) {
  if (n < 1 || p < 1 || samples < 1)
    throw std::invalid_argument("problem factory: all counts must be positive");
}

void check_shape(const Problem& pb, const StackedPoint& x) {
  if (x.rows() != pb.n || x.cols() != pb.p)
    throw std::invalid_argument("problem: stacked point shape mismatch");
}

Eigen::MatrixXd gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = gauss(rng);
  return m;
}

}  // namespace

Problem make_regularized_ls(int n, int p, int samples_per_agent, double mu,
                            std::uint64_t seed) {
  check_positive_counts(n, p, samples_per_agent);
  if (mu < 0.0) throw std::invalid_argument("make_regularized_ls: mu must be non-negative");

  std::mt19937_64 rng(seed);
  Problem pb;
  pb.n = n;
  pb.p = p;
  pb.l_is_analytic = true;
  double max_quad = 0.0;
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd a = gaussian_matrix(samples_per_agent, p, rng);
    Eigen::VectorXd b = gaussian_matrix(samples_per_agent, 1, rng);
    const double sigma_max = a.jacobiSvd().singularValues()(0);
    max_quad = std::max(max_quad, sigma_max * sigma_max);
    pb.agents.push_back(AgentObjective{
        [a, b, mu](const Eigen::VectorXd& x) {
          double reg = 0.0;
          for (int d = 0; d < x.size(); ++d) {
            const double t2 = x(d) * x(d);
            reg += t2 / (1.0 + t2);
          }
          return 0.5 * (a * x - b).squaredNorm() + mu * reg;
        },
        [a, b, mu](const Eigen::VectorXd& x) {
          Eigen::VectorXd g = a.transpose() * (a * x - b);
          for (int d = 0; d < x.size(); ++d) {
            const double denom = 1.0 + x(d) * x(d);
            g(d) += mu * 2.0 * x(d) / (denom * denom);
          }
          return g;
        }});
  }
  // The scalar regularizer's second derivative is bounded by 2.
  pb.l = max_quad + 2.0 * mu;
  return pb;
}

Problem make_welsch_regression(int n, int p, int samples_per_agent, double sigma,
                               std::uint64_t seed) {
  check_positive_counts(n, p, samples_per_agent);
  if (sigma <= 0.0) throw std::invalid_argument("make_welsch_regression: sigma must be positive");

  std::mt19937_64 rng(seed);
  Problem pb;
  pb.n = n;
  pb.p = p;
  pb.l_is_analytic = false;
  const double s2 = sigma * sigma;
  double l_est = 0.0;
  for (int i = 0; i < n; ++i) {
    Eigen::MatrixXd a = gaussian_matrix(samples_per_agent, p, rng);
    Eigen::VectorXd y = gaussian_matrix(samples_per_agent, 1, rng);

    // Empirical smoothness: largest Hessian eigenvalue over sampled points,
    // seeded with the least-squares point where the loss curvature peaks.
    auto hessian_norm = [&](const Eigen::VectorXd& x) {
      const Eigen::VectorXd r = a * x - y;
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(p, p);
      for (int k = 0; k < r.size(); ++k) {
        const double t2 = r(k) * r(k) / s2;
        const double curv = (2.0 / s2) * std::exp(-t2) * (1.0 - 2.0 * t2);
        h += curv * a.row(k).transpose() * a.row(k);
      }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
      return es.eigenvalues().cwiseAbs().maxCoeff();
    };
    const Eigen::VectorXd ls_point =
        a.jacobiSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(y);
    l_est = std::max(l_est, hessian_norm(ls_point));
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
      Eigen::VectorXd x(p);
      for (int d = 0; d < p; ++d) x(d) = ls_point(d) + gauss(rng);
      l_est = std::max(l_est, hessian_norm(x));
    }

    pb.agents.push_back(AgentObjective{
        [a, y, s2](const Eigen::VectorXd& x) {
          double total = 0.0;
          const Eigen::VectorXd r = a * x - y;
          for (int k = 0; k < r.size(); ++k)
            total += 1.0 - std::exp(-r(k) * r(k) / s2);
          return total;
        },
        [a, y, s2](const Eigen::VectorXd& x) {
          const Eigen::VectorXd r = a * x - y;
          Eigen::VectorXd weights(r.size());
          for (int k = 0; k < r.size(); ++k)
            weights(k) = std::exp(-r(k) * r(k) / s2) * 2.0 * r(k) / s2;
          return Eigen::VectorXd(a.transpose() * weights);
        }});
  }
  pb.l = 1.2 * l_est;
  return pb;
}

Problem make_convex_quadratic(int n, int p, std::uint64_t seed) {
  check_positive_counts(n, p, 1);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> eig_draw(0.5, 2.0);

  Problem pb;
  pb.n = n;
  pb.p = p;
  pb.l_is_analytic = true;
  Eigen::MatrixXd q_sum = Eigen::MatrixXd::Zero(p, p);
  Eigen::VectorXd qm_sum = Eigen::VectorXd::Zero(p);
  double max_eig = 0.0;
  for (int i = 0; i < n; ++i) {
    // Random SPD matrix with eigenvalues in [0.5, 2]: orthogonalize a
    // Gaussian matrix, then rescale its axes.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(gaussian_matrix(p, p, rng));
    Eigen::MatrixXd v = qr.householderQ();
    Eigen::VectorXd lam(p);
    for (int d = 0; d < p; ++d) lam(d) = eig_draw(rng);
    Eigen::MatrixXd q = v * lam.asDiagonal() * v.transpose();
    q = 0.5 * (q + q.transpose()).eval();
    Eigen::VectorXd m = gaussian_matrix(p, 1, rng);
    max_eig = std::max(max_eig, lam.maxCoeff());
    q_sum += q;
    qm_sum += q * m;
    pb.agents.push_back(AgentObjective{
        [q, m](const Eigen::VectorXd& x) {
          const Eigen::VectorXd d = x - m;
          return 0.5 * d.dot(q * d);
        },
        [q, m](const Eigen::VectorXd& x) { return Eigen::VectorXd(q * (x - m)); }});
  }
  pb.l = max_eig;
  pb.minimizer = q_sum.ldlt().solve(qm_sum);
  return pb;
}

std::pair<Eigen::VectorXd, double> evaluate(const Problem& pb, const StackedPoint& x) {
  check_shape(pb, x);
  Eigen::VectorXd per_agent(pb.n);
  for (int i = 0; i < pb.n; ++i) per_agent(i) = pb.agents[i].value(x.row(i).transpose());
  return {per_agent, per_agent.sum()};
}

StackedPoint gradient(const Problem& pb, const StackedPoint& x) {
  check_shape(pb, x);
  StackedPoint g(pb.n, pb.p);
  for (int i = 0; i < pb.n; ++i)
    g.row(i) = pb.agents[i].grad(x.row(i).transpose()).transpose();
  return g;
}

double estimate_smoothness(const Problem& pb, int trials, double radius,
                           std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("estimate_smoothness: trials must be positive");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto sample = [&] {
    StackedPoint x(pb.n, pb.p);
    for (int i = 0; i < pb.n; ++i)
      for (int d = 0; d < pb.p; ++d) x(i, d) = radius * gauss(rng);
    return x;
  };
  double max_ratio = 0.0;
  for (int t = 0; t < trials; ++t) {
    const StackedPoint x = sample();
    const StackedPoint y = sample();
    const double dist = (x - y).norm();
    if (dist < 1e-12) continue;
    const double ratio = (gradient(pb, x) - gradient(pb, y)).norm() / dist;
    max_ratio = std::max(max_ratio, ratio);
  }
  return 1.2 * max_ratio;
}

}  // namespace ttextra
