#include <doctest.h>

#include <cmath>

#include "ttextra/params.hpp"
#include "ttextra/diagnostics.hpp"

using namespace ttextra;

TEST_CASE("rho_lower_bound") {
  SUBCASE("hand evaluation at lambda2=0, l=1") {
    // max{2, (8 + sqrt(80))/2}
    CHECK(rho_lower_bound(0.0, 1.0) ==
          doctest::Approx((8.0 + std::sqrt(80.0)) / 2.0).epsilon(1e-14));
  }
  SUBCASE("hand evaluation at lambda2=0.5, l=1") {
    CHECK(rho_lower_bound(0.5, 1.0) ==
          doctest::Approx(8.0 + std::sqrt(72.0)).epsilon(1e-14));
  }
  SUBCASE("strictly increasing in lambda2") {
    double prev = rho_lower_bound(0.0, 1.0);
    for (double lambda2 : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      const double cur = rho_lower_bound(lambda2, 1.0);
      CHECK(cur > prev);
      prev = cur;
    }
  }
  SUBCASE("monotone non-decreasing in l") {
    double prev = 0.0;
    for (double l : {0.01, 0.1, 1.0, 10.0}) {
      const double cur = rho_lower_bound(0.4, l);
      CHECK(cur >= prev);
      prev = cur;
    }
  }
  SUBCASE("lambda2 at or above 1 rejected") {
    CHECK_THROWS(rho_lower_bound(1.0, 1.0));
  }
}

TEST_CASE("choose_a") {
  SUBCASE("geometric mean: a_max = 4 gives a = 2") {
    // Solve rho^2 (1 - lambda2) / (4 l (1 + 2 rho)) = 4 with lambda2 = 0, l = 1:
    // rho^2 = 16 (1 + 2 rho), rho = 16 + sqrt(272).
    const double rho = 16.0 + std::sqrt(272.0);
    CHECK(choose_a(0.0, rho, 1.0) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("just above the lower bound lands in (1, a_max)") {
    const double rho = rho_lower_bound(0.0, 1.0) * 1.001;
    const double a = choose_a(0.0, rho, 1.0);
    const double a_max = rho * rho / (4.0 * (1.0 + 2.0 * rho));
    CHECK(a > 1.0);
    CHECK(a < a_max);
  }
  SUBCASE("rho too small rejected") { CHECK_THROWS(choose_a(0.0, 1.0, 1.0)); }
  SUBCASE("interval property on a sweep") {
    for (double rho : {12.0, 20.0, 50.0}) {
      const double a_max = rho * rho * 0.8 / (4.0 * (1.0 + 2.0 * rho));
      REQUIRE(a_max > 1.0);
      const double a = choose_a(0.2, rho, 1.0);
      CHECK(a > 1.0);
      CHECK(a <= a_max);
    }
  }
}

TEST_CASE("beta_lower_bound") {
  const Graph g = ring(2);
  const auto w = metropolis(g);
  const double rho = 10.0;
  const auto wt = build_w_tilde(w, rho);

  SUBCASE("matches an independent re-evaluation from raw spectra") {
    const double l = 1.0;
    const double a = 1.5;
    const double got = beta_lower_bound(w, wt, rho, l, a);

    // Recompute every ingredient directly from eigendecompositions.
    const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(2, 2);
    const double lmax_diff = spectral(wt.entries - w.entries).eigenvalues(0);
    const double lambda2 = spectral(w.entries).eigenvalues(1);
    const double norm_iwt =
        spectral(identity - wt.entries).eigenvalues.cwiseAbs().maxCoeff();
    const double core = spectral(identity - wt.entries - (wt.entries - w.entries))
                            .eigenvalues.cwiseAbs()
                            .maxCoeff();
    const double big_l = l + rho * norm_iwt;
    const double term1 = (rho + 1.0) * lmax_diff + 1.0;
    const double term2 = (big_l / 2.0 + (1.0 + 2.0 * rho) / (rho * rho * (1.0 - lambda2)) *
                                            (4.0 * l * l + 4.0 * rho * rho * core * core)) /
                         (1.0 - 1.0 / a);
    CHECK(got == doctest::Approx(std::max(term1, term2)).epsilon(1e-13));
    CHECK(got > 0.0);
    CHECK(std::isfinite(got));
  }

  SUBCASE("first term hand evaluation on the 2-agent path at rho=10") {
    // lambda_min(W) = 0, so lambda_max(W_tilde - W) = 10/21 and the first
    // term is 11 * 10/21 + 1.
    const double lmax_diff = spectral(wt.entries - w.entries).eigenvalues(0);
    CHECK(lmax_diff == doctest::Approx(10.0 / 21.0).epsilon(1e-13));
    const double term1 = (rho + 1.0) * lmax_diff + 1.0;
    CHECK(term1 == doctest::Approx(11.0 * 10.0 / 21.0 + 1.0).epsilon(1e-13));
  }

  SUBCASE("bound blows up as a tends to 1") {
    const double near = beta_lower_bound(w, wt, rho, 1.0, 1.0 + 1e-9);
    CHECK(near > 1e8);
    CHECK_THROWS(beta_lower_bound(w, wt, rho, 1.0, 1.0));
  }

  SUBCASE("monotone non-decreasing in l") {
    double prev = 0.0;
    for (double l : {0.1, 0.5, 1.0, 4.0}) {
      const double cur = beta_lower_bound(w, wt, rho, l, 2.0);
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("select_parameters") {
  const Graph g = ring(5);

  SUBCASE("defaults are feasible and validated") {
    const auto sel = select_parameters(g, 1.0);
    CHECK(sel.assumption2.all_pass());
    CHECK(sel.steps.rho > sel.steps.rho_lb);
    CHECK(sel.steps.beta > sel.steps.beta_lb);
    CHECK(sel.steps.a > 1.0);
    CHECK(sel.steps.c == doctest::Approx(sel.steps.beta / (sel.steps.a * sel.steps.l)));
    CHECK(sel.steps.big_l ==
          doctest::Approx(sel.steps.l + sel.steps.rho * sel.cert.op_norm_i_minus_wtilde)
              .epsilon(1e-12));
  }

  SUBCASE("rho override below the bound is rejected with the bound named") {
    SelectOverrides o;
    o.rho = 0.1;
    CHECK_THROWS_AS(select_parameters(g, 1.0, o), InfeasibleParameterError);
    try {
      select_parameters(g, 1.0, o);
    } catch (const InfeasibleParameterError& e) {
      CHECK(std::string(e.what()).find("rho_lb") != std::string::npos);
    }
  }

  SUBCASE("deterministic") {
    const auto s1 = select_parameters(g, 1.0);
    const auto s2 = select_parameters(g, 1.0);
    CHECK(s1.steps.rho == s2.steps.rho);
    CHECK(s1.steps.beta == s2.steps.beta);
    CHECK((s1.w.entries - s2.w.entries).cwiseAbs().maxCoeff() == 0.0);
  }

  SUBCASE("laplacian scheme") {
    SelectOverrides o;
    o.weight_scheme = WeightScheme::kLaplacian;
    o.tau = 4.0;
    const auto sel = select_parameters(g, 1.0, o);
    CHECK(sel.assumption2.all_pass());
  }
}

TEST_CASE("selected parameters satisfy the potential-weight positivity conditions") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const Graph g = erdos_renyi_connected(6, 0.4, seed);
    for (double l : {0.5, 2.0}) {
      const auto sel = select_parameters(g, l);
      const auto& s = sel.steps;
      const int n = g.n();
      const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
      const Eigen::MatrixXd diff = sel.w_tilde.entries - sel.w.entries;
      const double coeff =
          (1.0 + 2.0 * s.rho) / (s.rho * s.rho * (1.0 - s.lambda2));
      const double core = sel.cert.op_norm_c2_core;

      // Scalar positivity: beta - c l - L/2 - coeff (4 l^2 + 4 rho^2 core^2) > 0.
      const double scalar = s.beta - s.c * s.l - s.big_l / 2.0 -
                            coeff * (4.0 * l * l + 4.0 * s.rho * s.rho * core * core);
      CHECK(scalar > 0.0);

      // Matrix positivity of the second-difference damping weight.
      const Eigen::MatrixXd c1 = s.beta * identity - s.rho * diff;
      const Eigen::MatrixXd m =
          0.5 * s.c * (s.beta * identity - s.rho * (identity - sel.w_tilde.entries)) -
          2.0 * coeff * c1.transpose() * c1;
      CHECK(spectral(0.5 * (m + m.transpose())).eigenvalues.minCoeff() > 0.0);
    }
  }
}
