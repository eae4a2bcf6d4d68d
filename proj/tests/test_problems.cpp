#include <doctest.h>

#include <random>

#include "ttextra/problems.hpp"

using namespace ttextra;

namespace {

// Central finite differences with h scaled by the point magnitude.
Eigen::VectorXd fd_gradient(const AgentObjective& agent, const Eigen::VectorXd& x) {
  const double h = 1e-6 * (1.0 + x.norm());
  Eigen::VectorXd g(x.size());
  for (int d = 0; d < x.size(); ++d) {
    Eigen::VectorXd xp = x, xm = x;
    xp(d) += h;
    xm(d) -= h;
    g(d) = (agent.value(xp) - agent.value(xm)) / (2.0 * h);
  }
  return g;
}

void check_gradients(const Problem& pb, std::uint64_t seed, double rel_tol = 1e-6) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (const auto& agent : pb.agents) {
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd x(pb.p);
      for (int d = 0; d < pb.p; ++d) x(d) = 2.0 * gauss(rng);
      const Eigen::VectorXd g = agent.grad(x);
      const Eigen::VectorXd g_fd = fd_gradient(agent, x);
      CHECK((g - g_fd).norm() <= rel_tol * (1.0 + g.norm()));
    }
  }
}

}  // namespace

TEST_CASE("regularized least squares family") {
  SUBCASE("regularizer value and slope at known points") {
    // value 0 and derivative 0 at the origin; derivative 2x/(1+x^2)^2 = 0.5 at x=1
    const auto pb = make_regularized_ls(1, 1, 1, 1.0, 3);
    const auto& agent = pb.agents[0];
    Eigen::VectorXd zero(1), one(1);
    zero << 0.0;
    one << 1.0;
    // subtract the least-squares part evaluated separately via mu=0 twin
    const auto pb0 = make_regularized_ls(1, 1, 1, 0.0, 3);
    CHECK(agent.value(zero) - pb0.agents[0].value(zero) == doctest::Approx(0.0));
    const double reg_grad_at_1 =
        agent.grad(one)(0) - pb0.agents[0].grad(one)(0);
    CHECK(reg_grad_at_1 == doctest::Approx(0.5).epsilon(1e-12));
  }
  SUBCASE("analytic gradients match finite differences") {
    check_gradients(make_regularized_ls(3, 2, 4, 0.5, 17), 42);
  }
  SUBCASE("values are non-negative") {
    const auto pb = make_regularized_ls(4, 3, 5, 0.3, 5);
    std::mt19937_64 rng(8);
    std::normal_distribution<double> gauss(0.0, 2.0);
    for (int t = 0; t < 1000; ++t) {
      StackedPoint x(pb.n, pb.p);
      for (int i = 0; i < pb.n; ++i)
        for (int d = 0; d < pb.p; ++d) x(i, d) = gauss(rng);
      CHECK(evaluate(pb, x).second >= 0.0);
    }
  }
  SUBCASE("sampled Lipschitz ratios never exceed the analytic constant") {
    const auto pb = make_regularized_ls(3, 2, 4, 0.5, 23);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss(0.0, 2.0);
    for (int t = 0; t < 100; ++t) {
      StackedPoint x(pb.n, pb.p), y(pb.n, pb.p);
      for (int i = 0; i < pb.n; ++i)
        for (int d = 0; d < pb.p; ++d) {
          x(i, d) = gauss(rng);
          y(i, d) = gauss(rng);
        }
      const double dist = (x - y).norm();
      if (dist < 1e-12) continue;
      const double ratio = (gradient(pb, x) - gradient(pb, y)).norm() / dist;
      CHECK(ratio <= pb.l * (1.0 + 1e-6));
    }
  }
}

TEST_CASE("welsch regression family") {
  const auto pb = make_welsch_regression(3, 2, 5, 1.0, 9);
  SUBCASE("losses live in [0, samples)") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> gauss(0.0, 2.0);
    for (int t = 0; t < 1000; ++t) {
      StackedPoint x(pb.n, pb.p);
      for (int i = 0; i < pb.n; ++i)
        for (int d = 0; d < pb.p; ++d) x(i, d) = gauss(rng);
      const auto [per_agent, total] = evaluate(pb, x);
      CHECK(total >= 0.0);
      for (int i = 0; i < pb.n; ++i) CHECK(per_agent(i) < 5.0);
    }
  }
  SUBCASE("gradients match finite differences") { check_gradients(pb, 77); }
  SUBCASE("smoothness constant flagged as estimate") {
    CHECK_FALSE(pb.l_is_analytic);
    CHECK(pb.l > 0.0);
  }
  SUBCASE("estimated l upper-bounds sampled gradient ratios") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> gauss(0.0, 1.5);
    for (int t = 0; t < 100; ++t) {
      StackedPoint x(pb.n, pb.p), y(pb.n, pb.p);
      for (int i = 0; i < pb.n; ++i)
        for (int d = 0; d < pb.p; ++d) {
          x(i, d) = gauss(rng);
          y(i, d) = gauss(rng);
        }
      const double dist = (x - y).norm();
      if (dist < 1e-12) continue;
      CHECK((gradient(pb, x) - gradient(pb, y)).norm() / dist <= pb.l * (1.0 + 1e-6));
    }
  }
}

TEST_CASE("convex quadratic family") {
  SUBCASE("value at the agent's own minimizer is zero") {
    const auto pb = make_convex_quadratic(3, 2, 12);
    // gradient vanishes at the stored global minimizer when all agents agree
    StackedPoint x(pb.n, pb.p);
    for (int i = 0; i < pb.n; ++i) x.row(i) = pb.minimizer->transpose();
    const Eigen::RowVectorXd grad_sum = gradient(pb, x).colwise().sum();
    CHECK(grad_sum.norm() <= 1e-10);
  }
  SUBCASE("scalar case has the weighted-mean minimizer") {
    const auto pb = make_convex_quadratic(2, 1, 5);
    // independent recomputation of the minimizer from gradients by bisection
    // of the aggregate scalar derivative
    auto total_deriv = [&](double t) {
      Eigen::VectorXd v(1);
      v << t;
      return pb.agents[0].grad(v)(0) + pb.agents[1].grad(v)(0);
    };
    double lo = -100.0, hi = 100.0;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (total_deriv(mid) > 0.0 ? hi : lo) = mid;
    }
    CHECK((*pb.minimizer)(0) == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-9));
  }
  SUBCASE("gradients match finite differences") {
    check_gradients(make_convex_quadratic(3, 3, 21), 55);
  }
}

TEST_CASE("evaluate") {
  const auto pb = make_regularized_ls(3, 2, 4, 0.0, 2);
  SUBCASE("total equals the per-agent sum") {
    const StackedPoint x = StackedPoint::Random(3, 2);
    const auto [per_agent, total] = evaluate(pb, x);
    double manual = 0.0;
    for (int i = 0; i < 3; ++i) manual += pb.agents[i].value(x.row(i).transpose());
    CHECK(total == doctest::Approx(manual).epsilon(1e-14));
    CHECK(per_agent.sum() == doctest::Approx(total).epsilon(1e-14));
  }
  SUBCASE("dimension mismatch rejected") {
    CHECK_THROWS(evaluate(pb, StackedPoint::Zero(2, 2)));
    CHECK_THROWS(gradient(pb, StackedPoint::Zero(3, 1)));
  }
}

TEST_CASE("estimate_smoothness") {
  SUBCASE("pure quadratic with unit curvature lands in [1, 1.2]") {
    // p=1 quadratics with Q=1: build via regularized LS with a single sample
    // a=1, b=0 is not directly constructible, so use the quadratic family
    // ratio instead: for any quadratic the ratio is the operator norm.
    const auto pb = make_convex_quadratic(2, 2, 3);
    const double est = estimate_smoothness(pb, 50, 2.0, 123);
    CHECK(est <= 1.2 * pb.l * (1.0 + 1e-9));
    CHECK(est >= 0.5);  // spectra were drawn from [0.5, 2]
  }
  SUBCASE("estimate never exceeds 1.2x the analytic bound") {
    const auto pb = make_regularized_ls(3, 2, 4, 0.5, 6);
    CHECK(estimate_smoothness(pb, 100, 2.0, 9) <= 1.2 * pb.l * (1.0 + 1e-9));
  }
  SUBCASE("deterministic given seed") {
    const auto pb = make_convex_quadratic(2, 2, 3);
    CHECK(estimate_smoothness(pb, 30, 2.0, 77) == estimate_smoothness(pb, 30, 2.0, 77));
  }
}
