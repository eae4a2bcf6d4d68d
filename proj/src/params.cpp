#include "ttextra/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ttextra {

std::string StepSizes::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"rho\": " << rho << ", \"beta\": " << beta << ", \"a\": " << a
     << ", \"c\": " << c << ", \"l\": " << l << ", \"L\": " << big_l
     << ", \"rho_lb\": " << rho_lb << ", \"beta_lb\": " << beta_lb
     << ", \"lambda2\": " << lambda2 << ", \"lambda_max_diff\": " << lambda_max_diff
     << "}";
  return os.str();
}

double rho_lower_bound(double lambda2, double l) {
  if (lambda2 >= 1.0)
    throw std::invalid_argument("rho_lower_bound: lambda2 must be below 1 (connected spectrum)");
  if (l <= 0.0) throw std::invalid_argument("rho_lower_bound: l must be positive");
  const double gap = 1.0 - lambda2;
  // The first term 1 + lambda_max(W_tilde - W) is worst-cased to 2, since that
  // eigenvalue never exceeds 1 and W_tilde is only built after rho is fixed.
  const double quad = (8.0 * l + std::sqrt(64.0 * l * l + 16.0 * l * gap)) / (2.0 * gap);
  return std::max(2.0, quad);
}

double choose_a(double lambda2, double rho, double l) {
  const double a_max = rho * rho * (1.0 - lambda2) / (4.0 * l * (1.0 + 2.0 * rho));
  if (a_max <= 1.0)
    throw std::invalid_argument("choose_a: rho too small, no admissible constant above 1");
  return std::sqrt(a_max);
}

double beta_lower_bound(const MixingMatrix& w, const MixingMatrix& wt, double rho,
                        double l, double a) {
  if (a <= 1.0) throw std::invalid_argument("beta_lower_bound: constant a must exceed 1");
  const auto cert = certify(w, wt);
  const double term1 = (rho + 1.0) * cert.lambda_max_diff + 1.0;
  const double big_l = l + rho * cert.op_norm_i_minus_wtilde;
  const double gap = 1.0 - cert.lambda2;
  const double coeff = (1.0 + 2.0 * rho) / (rho * rho * gap);
  const double core = cert.op_norm_c2_core;
  const double term2 =
      (big_l / 2.0 + coeff * (4.0 * l * l + 4.0 * rho * rho * core * core)) /
      (1.0 - 1.0 / a);
  return std::max(term1, term2);
}

SelectedParameters select_parameters(const Graph& g, double l,
                                     const SelectOverrides& overrides) {
  if (!is_connected(g)) throw std::invalid_argument("select_parameters: graph must be connected");
  if (l <= 0.0) throw std::invalid_argument("select_parameters: l must be positive");

  const double margin = overrides.margin.value_or(1.05);
  if (margin <= 1.0)
    throw std::invalid_argument("select_parameters: margin must exceed 1");

  const WeightScheme scheme = overrides.weight_scheme.value_or(WeightScheme::kMetropolis);
  MixingMatrix w = [&] {
    if (scheme == WeightScheme::kMetropolis) return metropolis(g);
    if (!overrides.tau)
      throw std::invalid_argument("select_parameters: laplacian scheme requires tau");
    return laplacian_based(g, *overrides.tau);
  }();

  const double lambda2 = spectral(w.entries).eigenvalues(1);
  const double rho_lb = rho_lower_bound(lambda2, l);
  const double rho = overrides.rho.value_or(margin * rho_lb);
  if (rho <= rho_lb) {
    std::ostringstream msg;
    msg << "select_parameters: rho override " << rho
        << " violates the lower bound rho_lb = " << rho_lb;
    throw InfeasibleParameterError(msg.str());
  }

  MixingMatrix wt = build_w_tilde(w, rho);
  const double a = choose_a(lambda2, rho, l);
  const double beta_lb = beta_lower_bound(w, wt, rho, l, a);
  const double beta = overrides.beta.value_or(margin * beta_lb);
  if (beta <= beta_lb) {
    std::ostringstream msg;
    msg << "select_parameters: beta override " << beta
        << " violates the lower bound beta_lb = " << beta_lb;
    throw InfeasibleParameterError(msg.str());
  }

  SelectedParameters out{std::move(w), std::move(wt), {}, {}, {}};
  out.cert = certify(out.w, out.w_tilde);
  out.assumption2 = validate_assumption2(out.w, out.w_tilde, rho);

  StepSizes s;
  s.rho = rho;
  s.beta = beta;
  s.l = l;
  s.big_l = l + rho * out.cert.op_norm_i_minus_wtilde;
  s.a = a;
  s.c = beta / (a * l);
  s.rho_lb = rho_lb;
  s.beta_lb = beta_lb;
  s.margin = margin;
  s.lambda2 = out.cert.lambda2;
  s.lambda_max_diff = out.cert.lambda_max_diff;
  out.steps = s;
  return out;
}

}  // namespace ttextra
