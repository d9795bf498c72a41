#pragma once

#include <cstdint>
#include <vector>

#include "hawkes/types.hpp"

namespace hawkes {

enum class StepRule { FixedStep, BacktrackingLineSearch };

struct NphcConfig {
  int max_iterations = 6000;
  double tolerance = 1e-12;  // relative loss-decrease stopping threshold
  int restarts = 4;          // extra jittered starts beyond the base one
  double perturbation_scale = 0.1;
  StepRule step_rule = StepRule::BacktrackingLineSearch;
  double fixed_step = 1e-6;  // only used with StepRule::FixedStep
  std::uint64_t seed = 1;    // drives the restart jitter

  void validate() const;
};

struct EstimationResult {
  Matrix R_hat;
  Matrix G_hat;
  Matrix Psi_hat;
  Vector mu_hat;
  Vector Lambda_hat;
  double kappa = 0.0;
  double final_loss = 0.0;
  std::vector<double> loss_trajectory;  // winning restart
  double spectral_radius = 0.0;         // of G_hat
  double largest_singular_value = 0.0;  // of G_hat
  bool converged = false;
  int restart_index = 0;
  bool nonstationary_warning = false;  // spectral radius of G_hat >= 1
  bool negative_mu_warning = false;    // some mu_hat entry < 0
};

// kappa = |Kc|_F^2 / (|Kc|_F^2 + |C|_F^2). Throws DegenerateCumulants when
// both norms vanish.
double kappa(const Matrix& C_hat, const Matrix& Kc_hat);

// L(R) = (1 - kappa) |Kc(R) - Kc_hat|_F^2 + kappa |C(R) - C_hat|_F^2 with
// Lambda fixed at cumulants.Lambda.
double loss(const Matrix& R, const CumulantSet& cumulants, double kappa);

// Analytic dL/dR; matches central finite differences.
Matrix loss_gradient(const Matrix& R, const CumulantSet& cumulants,
                     double kappa);

// R0 = sqrt(PSD projection of C_hat) diag(Lambda)^{-1/2}. Throws
// DegenerateLambda when some Lambda entry is 0.
Matrix initialize_R(const CumulantSet& cumulants);

// Minimizes the loss from initialize_R plus cfg.restarts jittered starts,
// keeps the best final loss (ties: smaller |G_hat|_F), and maps the
// optimum to G_hat = I - R_hat^-1, mu_hat = R_hat^-1 Lambda, Psi_hat =
// R_hat - I. Throws SingularRHat when R_hat is not invertible.
EstimationResult estimate(const CumulantSet& cumulants,
                          const NphcConfig& cfg);

}  // namespace hawkes
