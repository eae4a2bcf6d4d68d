#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "ttextra/mixing.hpp"

namespace ttextra {

/// Raised when a user-supplied step size violates its lower bound.
struct InfeasibleParameterError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Step sizes and derived scalar constants, with the lower bounds they were
/// checked against.
struct StepSizes {
  double rho = 0.0;
  double beta = 0.0;
  double l = 0.0;       // objective smoothness constant
  double big_l = 0.0;   // smoothness of the augmented Lagrangian in x
  double a = 0.0;       // strictly above 1
  double c = 0.0;       // potential weight beta / (a * l)
  double rho_lb = 0.0;
  double beta_lb = 0.0;
  double margin = 0.0;
  double lambda2 = 0.0;
  double lambda_max_diff = 0.0;

  std::string to_json() const;
};

enum class WeightScheme { kMetropolis, kLaplacian };

struct SelectOverrides {
  std::optional<double> rho;
  std::optional<double> beta;
  std::optional<double> margin;
  std::optional<WeightScheme> weight_scheme;
  std::optional<double> tau;  // only used with the Laplacian scheme
};

struct SelectedParameters {
  MixingMatrix w;
  MixingMatrix w_tilde;
  SpectralCertificate cert;
  StepSizes steps;
  ValidationReport assumption2;
};

double rho_lower_bound(double lambda2, double l);

double beta_lower_bound(const MixingMatrix& w, const MixingMatrix& wt, double rho,
                        double l, double a);

/// Admissible potential constant: geometric mean of (1, a_max] with
/// a_max = rho^2 (1 - lambda2) / (4 l (1 + 2 rho)).
double choose_a(double lambda2, double rho, double l);

SelectedParameters select_parameters(const Graph& g, double l,
                                     const SelectOverrides& overrides = {});

}  // namespace ttextra
