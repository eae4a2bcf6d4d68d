#include "ttextra/diagnostics.hpp"

#include <sstream>
#include <stdexcept>

namespace ttextra {

namespace {

// trace(d^T m d): the quadratic form summed over all coordinates.
double quad_form(const Eigen::MatrixXd& m, const StackedPoint& d) {
  return (d.transpose() * m * d).trace();
}

void check_same_shape(const StackedPoint& a, const StackedPoint& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("diagnostics: stacked shape mismatch");
}

}  // namespace

PotentialConstants make_potential_constants(const MixingMatrix& w, const MixingMatrix& wt,
                                            const StepSizes& steps) {
  const int n = w.n();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd diff = wt.entries - w.entries;
  PotentialConstants consts;
  consts.c1 = steps.beta * identity - steps.rho * diff;
  consts.c2 = steps.rho * (identity - wt.entries - diff);
  const auto cert = certify(w, wt);
  consts.dual_coeff =
      (1.0 + 2.0 * steps.rho) / (steps.rho * steps.rho * (1.0 - cert.lambda2));
  consts.c2_core_norm = cert.op_norm_c2_core;
  consts.kappa = steps.c * steps.l / 2.0 +
                 consts.dual_coeff *
                     (4.0 * steps.l * steps.l +
                      4.0 * steps.rho * steps.rho * cert.op_norm_c2_core *
                          cert.op_norm_c2_core);
  return consts;
}

double augmented_lagrangian(const Problem& pb, const StackedPoint& x,
                            const StackedPoint& lambda, double rho,
                            const MixingMatrix& wt, const Eigen::MatrixXd& a) {
  check_same_shape(x, lambda);
  const int n = wt.n();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  const double f = evaluate(pb, x).second;
  const double pairing = (lambda.array() * (a * x).array()).sum();
  const double penalty = 0.5 * rho * quad_form(identity - wt.entries, x);
  return f + pairing + penalty;
}

double potential(const Problem& pb, const StackedPoint& x_next, const StackedPoint& x_curr,
                 const StackedPoint& lambda_next, const StepSizes& steps,
                 const PotentialConstants& consts, const Eigen::MatrixXd& a) {
  check_same_shape(x_next, x_curr);
  const StackedPoint delta = x_next - x_curr;
  // The augmented Lagrangian needs W_tilde; reconstruct I - W_tilde from the
  // stored constants: C1 - C2 = beta I - rho (I - W_tilde).
  const int n = static_cast<int>(consts.c1.rows());
  const Eigen::MatrixXd i_minus_wt =
      (steps.beta * Eigen::MatrixXd::Identity(n, n) - (consts.c1 - consts.c2)) / steps.rho;
  const double f = evaluate(pb, x_next).second;
  const double l_rho = f + (lambda_next.array() * (a * x_next).array()).sum() +
                       0.5 * steps.rho * quad_form(i_minus_wt, x_next);
  return l_rho + 0.5 * steps.c * steps.rho * (a * x_next).squaredNorm() +
         0.5 * steps.c * quad_form(consts.c1, delta) +
         0.5 * steps.c * quad_form(consts.c2, delta) + consts.kappa * delta.squaredNorm();
}

double consensus_error(const StackedPoint& x) {
  const Eigen::RowVectorXd mean = x.colwise().mean();
  return (x.rowwise() - mean).norm();
}

double stationarity(const Problem& pb, const StackedPoint& x) {
  return gradient(pb, x).colwise().sum().norm();
}

std::string LemmaReport::to_json() const {
  std::ostringstream os;
  os.precision(17);
  auto dump = [&os](const char* name, const std::vector<double>& v) {
    os << "\"" << name << "\": [";
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (k > 0) os << ", ";
      os << v[k];
    }
    os << "]";
  };
  os << "{";
  dump("lemma51", lemma51);
  os << ", ";
  dump("lemma52", lemma52);
  os << ", ";
  dump("lemma53", lemma53);
  os << ", \"min_slack\": " << min_slack << "}";
  return os.str();
}

LemmaSlacks check_descent_lemmas(const IterateWindow& window, const Problem& pb,
                                 const StepSizes& steps, const PotentialConstants& consts,
                                 const MixingMatrix& w, const MixingMatrix& wt,
                                 const Eigen::MatrixXd& a) {
  const int n = w.n();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  const StackedPoint dx_next = window.x_next - window.x_curr;
  const StackedPoint dx_prev = window.x_curr - window.x_before;
  const StackedPoint second_diff = dx_next - dx_prev;
  const StackedPoint dlambda = window.lambda_next - window.lambda_curr;
  const double rho = steps.rho;

  LemmaSlacks slacks;

  // Descent of the augmented Lagrangian, up to the dual correction term.
  const double l_rho_next =
      augmented_lagrangian(pb, window.x_next, window.lambda_next, rho, wt, a);
  const double l_rho_curr =
      augmented_lagrangian(pb, window.x_curr, window.lambda_curr, rho, wt, a);
  const double rhs51 = dlambda.squaredNorm() / rho -
                       (steps.beta - steps.big_l / 2.0) * dx_next.squaredNorm();
  slacks.lemma51 = rhs51 - (l_rho_next - l_rho_curr);

  // Dual-step bound in terms of the previous primal step and the second
  // difference of iterates.
  const double coeff = consts.dual_coeff;
  const double core = consts.c2_core_norm;
  const double rhs52 =
      coeff * (4.0 * steps.l * steps.l + 4.0 * rho * rho * core * core) *
          dx_prev.squaredNorm() +
      2.0 * coeff * quad_form(consts.c1.transpose() * consts.c1, second_diff);
  slacks.lemma52 = rhs52 - dlambda.squaredNorm() / rho;

  // Quadratic-energy inequality across the window.
  const double lhs53 = 0.5 * rho * (a * window.x_next).squaredNorm() +
                       0.5 * quad_form(consts.c1, dx_next) +
                       0.5 * quad_form(consts.c2, dx_next);
  const Eigen::MatrixXd damping = steps.beta * identity - rho * (identity - wt.entries);
  const double rhs53 = 0.5 * rho * (a * window.x_curr).squaredNorm() +
                       0.5 * quad_form(consts.c1, dx_prev) +
                       0.5 * quad_form(consts.c2, dx_prev) +
                       0.5 * steps.l * dx_prev.squaredNorm() +
                       0.5 * steps.l * dx_next.squaredNorm() -
                       0.5 * quad_form(damping, second_diff);
  slacks.lemma53 = rhs53 - lhs53;

  return slacks;
}

}  // namespace ttextra
