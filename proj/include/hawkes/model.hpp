#pragma once

#include <vector>

#include "hawkes/types.hpp"

namespace hawkes {

// Matrix of kernel integrals: entry (i, j) is alpha of kernel (i, j),
// 0 where the kernel is absent.
Matrix g_from_model(const HawkesModel& model);

// R = (I - G)^-1 and Psi = R - I. Throws SingularMatrix when I - G is
// numerically singular.
BranchingMatrices matrices_from_g(const Matrix& G);

// Largest modulus over the eigenvalues of G. This is the stationarity
// criterion used throughout.
double spectral_radius(const Matrix& G);

// Largest singular value, reported alongside the radius in diagnostics.
double largest_singular_value(const Matrix& G);

struct StationarityDiagnostics {
  double spectral_radius = 0.0;
  double largest_singular_value = 0.0;
  bool stationary = false;      // spectral_radius < 1
  bool norms_disagree = false;  // radius and singular value straddle 1
};

StationarityDiagnostics stationarity_diagnostics(const Matrix& G);

// Moment identities evaluated at a given R with Lambda held fixed.
// covariance_from_r returns R diag(Lambda) R^T; kc_from_r the K^{iij} slice.
Matrix covariance_from_r(const Matrix& R, const Vector& lambda);
Matrix kc_from_r(const Matrix& R, const Vector& lambda);

// Exact cumulants of the model (Lambda, C, K^{iij} slice). Throws
// NonStationary when the spectral radius of G is >= 1.
CumulantSet theoretical_cumulants(const Matrix& G, const Vector& mu);

// Full third-cumulant tensor, tensor[i](j, k) = K^{ijk}. Exposed for
// symmetry checks; the estimator only consumes the K^{iij} slice.
std::vector<Matrix> third_cumulant_tensor(const Matrix& G, const Vector& mu);

}  // namespace hawkes
