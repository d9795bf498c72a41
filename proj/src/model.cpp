#include "hawkes/model.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>

namespace hawkes {

void EventStream::validate() const {
  if (duration <= 0.0) throw Error("stream duration must be positive");
  for (int i = 0; i < dim(); ++i) {
    const auto& z = events[static_cast<std::size_t>(i)];
    double prev = -1.0;
    for (double t : z) {
      if (!(t >= 0.0 && t <= duration))
        throw Error("timestamp outside [0, T] on component " +
                    std::to_string(i));
      if (t <= prev)
        throw Error("timestamps not strictly increasing on component " +
                    std::to_string(i));
      prev = t;
    }
  }
}

void KernelSpec::validate() const {
  if (!(beta > 0.0)) throw Error("kernel beta must be positive");
  if (family == KernelFamily::Rectangular && gamma < 0.0)
    throw Error("rectangular kernel requires gamma >= 0");
  if (family == KernelFamily::PowerLaw && !(gamma > 0.0))
    throw Error("power-law kernel requires gamma > 0");
}

void HawkesModel::validate() const {
  if (dim() < 1) throw Error("model dimension must be >= 1");
  if (kernels.size() != static_cast<std::size_t>(dim()) * dim())
    throw Error("kernel grid size does not match dimension");
  for (int i = 0; i < dim(); ++i)
    if (mu[i] < 0.0) throw Error("negative baseline intensity");
  for (const auto& k : kernels)
    if (k) k->validate();
}

Matrix g_from_model(const HawkesModel& model) {
  const int d = model.dim();
  Matrix g = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (const auto& k = model.kernel(i, j)) g(i, j) = k->alpha;
  return g;
}

BranchingMatrices matrices_from_g(const Matrix& G) {
  const int d = static_cast<int>(G.rows());
  const Matrix A = Matrix::Identity(d, d) - G;
  Eigen::FullPivLU<Matrix> lu(A);
  if (!lu.isInvertible())
    throw SingularMatrix("I - G is numerically singular");
  BranchingMatrices out;
  out.G = G;
  out.R = lu.inverse();
  out.Psi = out.R - Matrix::Identity(d, d);
  return out;
}

double spectral_radius(const Matrix& G) {
  if (G.rows() == 0) return 0.0;
  Eigen::EigenSolver<Matrix> es(G, /*computeEigenvectors=*/false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

double largest_singular_value(const Matrix& G) {
  if (G.rows() == 0) return 0.0;
  return Eigen::JacobiSVD<Matrix>(G).singularValues()(0);
}

StationarityDiagnostics stationarity_diagnostics(const Matrix& G) {
  StationarityDiagnostics d;
  d.spectral_radius = spectral_radius(G);
  d.largest_singular_value = largest_singular_value(G);
  d.stationary = d.spectral_radius < 1.0;
  d.norms_disagree = (d.spectral_radius < 1.0) != (d.largest_singular_value < 1.0);
  return d;
}

Matrix covariance_from_r(const Matrix& R, const Vector& lambda) {
  return R * lambda.asDiagonal() * R.transpose();
}

Matrix kc_from_r(const Matrix& R, const Vector& lambda) {
  const Matrix C = covariance_from_r(R, lambda);
  const Matrix R2 = R.cwiseProduct(R);
  const Matrix RL = R * lambda.asDiagonal();
  return R2 * C.transpose() + 2.0 * (R.cwiseProduct(C - RL)) * R.transpose();
}

CumulantSet theoretical_cumulants(const Matrix& G, const Vector& mu) {
  if (spectral_radius(G) >= 1.0)
    throw NonStationary("spectral radius of G is >= 1");
  for (int i = 0; i < mu.size(); ++i)
    if (mu[i] < 0.0) throw Error("negative baseline intensity");
  const BranchingMatrices bm = matrices_from_g(G);
  CumulantSet cs;
  cs.Lambda = bm.R * mu;
  cs.C = covariance_from_r(bm.R, cs.Lambda);
  cs.Kc = kc_from_r(bm.R, cs.Lambda);
  cs.H = 0.0;
  cs.duration = 0.0;
  cs.source = CumulantSource::Theoretical;
  return cs;
}

std::vector<Matrix> third_cumulant_tensor(const Matrix& G, const Vector& mu) {
  const BranchingMatrices bm = matrices_from_g(G);
  const Matrix& R = bm.R;
  const Vector lambda = R * mu;
  const Matrix C = covariance_from_r(R, lambda);
  const int d = static_cast<int>(G.rows());
  std::vector<Matrix> K(static_cast<std::size_t>(d), Matrix::Zero(d, d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        double s = 0.0;
        for (int m = 0; m < d; ++m)
          s += R(i, m) * R(j, m) * C(k, m) + R(i, m) * C(j, m) * R(k, m) +
               C(i, m) * R(j, m) * R(k, m) -
               2.0 * lambda[m] * R(i, m) * R(j, m) * R(k, m);
        K[static_cast<std::size_t>(i)](j, k) = s;
      }
  return K;
}

}  // namespace hawkes
