#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "ttextra/graph.hpp"

namespace ttextra {

/// Symmetric mixing matrix conforming to a graph's sparsity pattern.
/// Symmetry is structural: construction fills one triangle and mirrors it.
struct MixingMatrix {
  Eigen::MatrixXd entries;
  Graph graph;

  int n() const { return static_cast<int>(entries.rows()); }
};

struct EigenDecomposition {
  Eigen::VectorXd eigenvalues;   // descending
  Eigen::MatrixXd eigenvectors;  // column k pairs with eigenvalues[k]
};

/// Spectral quantities consumed by the step-size bounds and the potential.
struct SpectralCertificate {
  Eigen::VectorXd eigenvalues_w;  // descending
  double lambda2;                 // second largest eigenvalue of W
  double lambda_max_diff;         // largest eigenvalue of W_tilde - W
  Eigen::MatrixXd sqrt_a;         // symmetric PSD square root of W_tilde - W
  double op_norm_i_minus_wtilde;
  double op_norm_c2_core;  // ||I - W_tilde - (W_tilde - W)||
};

struct ValidationClause {
  std::string name;
  bool pass;
  double value;  // witness quantity (min eigenvalue, residual, ...)
};

struct ValidationReport {
  std::vector<ValidationClause> clauses;
  bool all_pass() const;
  std::string to_json() const;
};

MixingMatrix metropolis(const Graph& g);

/// W = I - L/tau with L the combinatorial Laplacian; requires
/// tau > lambda_max(L)/2 so every eigenvalue of W stays above -1.
MixingMatrix laplacian_based(const Graph& g, double tau);

/// W_tilde = (I + (1/rho + 1) W) / (1/rho + 2).
MixingMatrix build_w_tilde(const MixingMatrix& w, double rho);

ValidationReport validate_assumption2(const MixingMatrix& w, const MixingMatrix& wt,
                                      double rho, double tol = 1e-9);

EigenDecomposition spectral(const Eigen::MatrixXd& m);

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& m, double tol = 1e-10);

SpectralCertificate certify(const MixingMatrix& w, const MixingMatrix& wt);

std::string matrix_to_json(const Eigen::MatrixXd& m);

}  // namespace ttextra
