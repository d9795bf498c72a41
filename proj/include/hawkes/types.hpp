#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <optional>
#include <vector>

#include "hawkes/errors.hpp"

namespace hawkes {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// One realization of a d-dimensional point process on [0, duration].
// Each component holds strictly increasing timestamps in seconds.
struct EventStream {
  double duration = 0.0;
  std::vector<std::vector<double>> events;

  int dim() const { return static_cast<int>(events.size()); }

  std::size_t total_events() const {
    std::size_t n = 0;
    for (const auto& z : events) n += z.size();
    return n;
  }

  std::size_t max_component_events() const {
    std::size_t n = 0;
    for (const auto& z : events) n = std::max(n, z.size());
    return n;
  }

  // Throws Error if any timestamp is outside [0, duration] or a component
  // is not strictly increasing.
  void validate() const;
};

enum class KernelFamily { Exponential, Rectangular, PowerLaw };

// Parametric excitation kernel. `alpha` is the integral over [0, inf) for
// every family; `beta` is an inverse time scale; `gamma` is the onset delay
// in seconds (Rectangular) or the tail exponent (PowerLaw).
struct KernelSpec {
  KernelFamily family = KernelFamily::Exponential;
  double alpha = 0.0;
  double beta = 1.0;
  double gamma = 0.0;

  void validate() const;
};

// Baselines plus a d x d grid of optional kernels (absent = zero kernel).
struct HawkesModel {
  Vector mu;
  std::vector<std::optional<KernelSpec>> kernels;

  HawkesModel() = default;
  explicit HawkesModel(int dim)
      : mu(Vector::Zero(dim)), kernels(static_cast<std::size_t>(dim) * dim) {}

  int dim() const { return static_cast<int>(mu.size()); }

  const std::optional<KernelSpec>& kernel(int i, int j) const {
    return kernels[static_cast<std::size_t>(i) * dim() + j];
  }
  std::optional<KernelSpec>& kernel(int i, int j) {
    return kernels[static_cast<std::size_t>(i) * dim() + j];
  }

  void validate() const;
};

struct BranchingMatrices {
  Matrix G;
  Matrix R;
  Matrix Psi;
};

enum class CumulantSource { Empirical, Theoretical };

// First three integrated cumulants. Kc(i, j) holds the third-cumulant
// slice K^{iij}. H is the estimation half-width (0 for theoretical values)
// and duration the total observation time behind empirical estimates.
struct CumulantSet {
  Vector Lambda;
  Matrix C;
  Matrix Kc;
  double H = 0.0;
  double duration = 0.0;
  CumulantSource source = CumulantSource::Theoretical;

  int dim() const { return static_cast<int>(Lambda.size()); }
};

}  // namespace hawkes
