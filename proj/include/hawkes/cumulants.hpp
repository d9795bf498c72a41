#pragma once

#include <span>

#include "hawkes/types.hpp"

namespace hawkes {

enum class BoundaryPolicy {
  // Anchor sums run over all events; counts clip at the window edges and
  // the normalization is the full duration T. Matches the literal
  // estimator formulas.
  ClipCounts,
  // Anchors restricted to [H, T - H], normalization T - 2H. Removes the
  // edge bias. Default.
  RestrictAnchors,
};

struct CumulantConfig {
  double H = 1.0;  // window half-width, seconds; requires 0 < 2H < T
  BoundaryPolicy boundary = BoundaryPolicy::RestrictAnchors;
  bool symmetrize_C = true;

  void validate(double duration) const;  // throws WindowTooLarge
};

// Lambda_hat^i = N^i_T / T. Empty components give 0.
Vector estimate_lambda(const EventStream& stream);

// Integrated covariance estimator; symmetrized as (C + C^T)/2 when
// cfg.symmetrize_C is set.
Matrix estimate_covariance(const EventStream& stream,
                           const CumulantConfig& cfg);

// Third-cumulant slice K^{iij}, anchored on Z^i: per-anchor product of the
// centered i- and j-window counts, minus the (2H - |tau' - tau|)^+ cross
// term, plus the 4 H^2 Lambda^i Lambda^i Lambda^j correction.
Matrix estimate_skewness(const EventStream& stream, const CumulantConfig& cfg);

// The three estimators bundled into one CumulantSet.
CumulantSet estimate_cumulants(const EventStream& stream,
                               const CumulantConfig& cfg);

// Covariance density at lag t estimated with bin width h.
double pointwise_covariance_density(const EventStream& stream, int i, int j,
                                    double t, double h);

// Picks the half-width H: scans the pointwise density on the lag grid,
// finds the characteristic time after which max |density| over (i, j)
// stays below a noise floor, and returns multiple * tau_c clamped below
// T / 2. The floor is 3x the median density magnitude over the last
// quartile of the grid. Throws NoDecayDetected when no such point exists.
// h <= 0 selects the median grid spacing.
double select_H(const EventStream& stream, std::span<const double> grid,
                double multiple, double h = 0.0);

// Duration-weighted average across realizations sharing d and H.
CumulantSet aggregate_cumulants(std::span<const CumulantSet> parts);

}  // namespace hawkes
