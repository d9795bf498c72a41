#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hawkes/types.hpp"

namespace hawkes {

struct SimConfig {
  double horizon = 0.0;  // seconds
  std::uint64_t seed = 0;
  std::optional<std::size_t> max_events;
  double upper_bound_margin = 1.0;  // >= 1, inflates the thinning majorant

  void validate() const;
};

// Kernel value phi(t); zero for t < 0.
double kernel_value(const KernelSpec& spec, double t);

// Signed tail mass: integral of phi over [t, inf).
double kernel_tail_integral(const KernelSpec& spec, double t);

// Lag beyond which the remaining tail mass is below tail_fraction * |alpha|.
// Exact support end for Rectangular kernels.
double kernel_truncation_horizon(const KernelSpec& spec,
                                 double tail_fraction = 1e-8);

// lambda^i(t) = max(0, mu^i + sum over past events of phi^{ij}(t - s)),
// using events strictly before t.
Vector conditional_intensity(const HawkesModel& model,
                             const EventStream& history, double t);

struct SimResult {
  EventStream stream;
  bool truncated = false;  // hit max_events; stream is the partial sample
  std::uint64_t candidates = 0;
  std::uint64_t accepted = 0;
  // max over candidates of total intensity / majorant; thinning is valid
  // only while this stays <= 1.
  double max_intensity_ratio = 0.0;
};

// Exact sampling by Ogata thinning. Deterministic given (model, cfg).
// Throws NonStationary when the spectral radius of G is >= 1.
SimResult simulate(const HawkesModel& model, const SimConfig& cfg);

// Independent realizations with per-realization RNG streams; realization k
// uses mix_seed(cfg.seed, k), so results do not depend on scheduling.
std::vector<SimResult> simulate_batch(const HawkesModel& model,
                                      const SimConfig& cfg,
                                      std::size_t realizations);

// splitmix64 step, used to derive per-stream seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace hawkes
