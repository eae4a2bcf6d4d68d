#include "ttextra/mixing.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ttextra {

namespace {

// Mirror the strict upper triangle into the lower one.
void symmetrize_from_upper(Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) m(j, i) = m(i, j);
}

bool conforms_to_graph(const Eigen::MatrixXd& m, const Graph& g) {
  const int n = static_cast<int>(m.rows());
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (m(i, j) != 0.0 && !g.has_edge(i, j)) return false;
  return true;
}

}  // namespace

bool ValidationReport::all_pass() const {
  for (const auto& c : clauses)
    if (!c.pass) return false;
  return true;
}

std::string ValidationReport::to_json() const {
  std::ostringstream os;
  os.precision(17);
  os << "{\"all_pass\": " << (all_pass() ? "true" : "false") << ", \"clauses\": [";
  for (std::size_t k = 0; k < clauses.size(); ++k) {
    if (k > 0) os << ", ";
    os << "{\"name\": \"" << clauses[k].name << "\", \"pass\": "
       << (clauses[k].pass ? "true" : "false") << ", \"value\": " << clauses[k].value << "}";
  }
  os << "]}";
  return os.str();
}

MixingMatrix metropolis(const Graph& g) {
  if (!is_connected(g)) throw std::invalid_argument("metropolis: graph must be connected");
  const int n = g.n();
  const auto deg = degrees(g);
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j] : g.edges())
    w(i, j) = 1.0 / (1.0 + std::max(deg[i], deg[j]));
  symmetrize_from_upper(w);
  for (int i = 0; i < n; ++i) w(i, i) = 1.0 - w.row(i).sum();
  return MixingMatrix{std::move(w), g};
}

MixingMatrix laplacian_based(const Graph& g, double tau) {
  if (!is_connected(g)) throw std::invalid_argument("laplacian_based: graph must be connected");
  const int n = g.n();
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j] : g.edges()) {
    lap(i, j) = -1.0;
    lap(i, i) += 1.0;
    lap(j, j) += 1.0;
  }
  symmetrize_from_upper(lap);
  const auto eig = spectral(lap);
  if (tau <= eig.eigenvalues(0) / 2.0)
    throw std::invalid_argument(
        "laplacian_based: tau must exceed lambda_max(Laplacian)/2 to keep eigenvalues above -1");
  Eigen::MatrixXd w = Eigen::MatrixXd::Identity(n, n) - lap / tau;
  symmetrize_from_upper(w);
  return MixingMatrix{std::move(w), g};
}

MixingMatrix build_w_tilde(const MixingMatrix& w, double rho) {
  if (rho <= 0.0) throw std::invalid_argument("build_w_tilde: rho must be positive");
  const int n = w.n();
  const double denom = 1.0 / rho + 2.0;
  Eigen::MatrixXd wt =
      (Eigen::MatrixXd::Identity(n, n) + (1.0 / rho + 1.0) * w.entries) / denom;
  symmetrize_from_upper(wt);
  return MixingMatrix{std::move(wt), w.graph};
}

EigenDecomposition spectral(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols() || (m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("spectral: matrix must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectral: eigendecomposition failed");
  const int n = static_cast<int>(m.rows());
  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  // Eigen returns ascending order; flip to descending.
  for (int k = 0; k < n; ++k) {
    out.eigenvalues(k) = solver.eigenvalues()(n - 1 - k);
    out.eigenvectors.col(k) = solver.eigenvectors().col(n - 1 - k);
  }
  return out;
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m, double tol) {
  auto eig = spectral(m);
  const int n = static_cast<int>(m.rows());
  Eigen::VectorXd lam = eig.eigenvalues;
  for (int k = 0; k < n; ++k) {
    if (lam(k) < -tol)
      throw std::invalid_argument("psd_sqrt: matrix has an eigenvalue below -tol");
    if (lam(k) < 0.0) lam(k) = 0.0;  // clamp roundoff negatives
  }
  Eigen::MatrixXd a = eig.eigenvectors * lam.cwiseSqrt().asDiagonal() *
                      eig.eigenvectors.transpose();
  // exact symmetry despite roundoff in the triple product
  a = 0.5 * (a + a.transpose()).eval();
  return a;
}

ValidationReport validate_assumption2(const MixingMatrix& w, const MixingMatrix& wt,
                                      double rho, double tol) {
  if (w.n() != wt.n())
    throw std::invalid_argument("validate_assumption2: dimension mismatch");
  const int n = w.n();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
  ValidationReport report;

  report.clauses.push_back(
      {"sparsity_W", conforms_to_graph(w.entries, w.graph), 0.0});
  report.clauses.push_back(
      {"sparsity_W_tilde", conforms_to_graph(wt.entries, wt.graph), 0.0});

  const double asym_w = (w.entries - w.entries.transpose()).cwiseAbs().maxCoeff();
  const double asym_wt = (wt.entries - wt.entries.transpose()).cwiseAbs().maxCoeff();
  report.clauses.push_back({"symmetry", asym_w == 0.0 && asym_wt == 0.0,
                            std::max(asym_w, asym_wt)});

  // Null(W_tilde - W) = span{1}: exactly one near-zero eigenvalue whose
  // eigenvector is proportional to the all-ones vector.
  const Eigen::MatrixXd diff = wt.entries - w.entries;
  const auto eig_diff = spectral(diff);
  int null_count = 0;
  int null_index = -1;
  for (int k = 0; k < n; ++k) {
    if (std::abs(eig_diff.eigenvalues(k)) < tol) {
      ++null_count;
      null_index = k;
    }
  }
  bool null_ok = null_count == 1;
  double null_witness = static_cast<double>(null_count);
  if (null_ok) {
    const Eigen::VectorXd v = eig_diff.eigenvectors.col(null_index);
    const double align = std::abs(v.dot(ones)) / std::sqrt(static_cast<double>(n));
    null_ok = align > 1.0 - 1e-8;
    null_witness = align;
  }
  const double wt_ones_residual = ((identity - wt.entries) * ones).cwiseAbs().maxCoeff();
  report.clauses.push_back({"null_space", null_ok && wt_ones_residual < tol,
                            null_ok ? wt_ones_residual : null_witness});

  const Eigen::MatrixXd upper = 0.5 * (identity + w.entries) - wt.entries;
  const double upper_min = spectral(upper).eigenvalues.minCoeff();
  report.clauses.push_back({"psd_upper", upper_min >= -tol, upper_min});

  const Eigen::MatrixXd lower =
      wt.entries - (identity + (1.0 / rho + 1.0) * w.entries) / (1.0 / rho + 2.0);
  const Eigen::MatrixXd lower_sym = 0.5 * (lower + lower.transpose());
  const double lower_min = spectral(lower_sym).eigenvalues.minCoeff();
  report.clauses.push_back({"psd_lower", lower_min >= -tol, lower_min});

  return report;
}

SpectralCertificate certify(const MixingMatrix& w, const MixingMatrix& wt) {
  const int n = w.n();
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
  const Eigen::MatrixXd diff = wt.entries - w.entries;
  SpectralCertificate cert;
  cert.eigenvalues_w = spectral(w.entries).eigenvalues;
  cert.lambda2 = cert.eigenvalues_w(1);
  const auto eig_diff = spectral(diff);
  cert.lambda_max_diff = eig_diff.eigenvalues(0);
  cert.sqrt_a = psd_sqrt(diff);
  cert.op_norm_i_minus_wtilde =
      spectral(identity - wt.entries).eigenvalues.cwiseAbs().maxCoeff();
  cert.op_norm_c2_core =
      spectral(identity - wt.entries - diff).eigenvalues.cwiseAbs().maxCoeff();
  return cert;
}

std::string matrix_to_json(const Eigen::MatrixXd& m) {
  std::ostringstream os;
  os.precision(17);
  os << "{\"n\": " << m.rows() << ", \"rows\": [";
  for (int i = 0; i < m.rows(); ++i) {
    if (i > 0) os << ", ";
    os << "[";
    for (int j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ", ";
      os << m(i, j);
    }
    os << "]";
  }
  os << "]}";
  return os.str();
}

}  // namespace ttextra
