#include "hawkes/cumulants.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace hawkes {

void CumulantConfig::validate(double duration) const {
  if (!(H > 0.0)) throw Error("window half-width H must be positive");
  if (2.0 * H >= duration)
    throw WindowTooLarge("2H >= T: window does not fit the observation span");
}

Vector estimate_lambda(const EventStream& stream) {
  const int d = stream.dim();
  Vector lambda(d);
  for (int i = 0; i < d; ++i)
    lambda[i] = static_cast<double>(stream.events[static_cast<std::size_t>(i)].size()) /
                stream.duration;
  return lambda;
}

namespace {

struct AnchorRange {
  std::size_t begin = 0, end = 0;
  double t_eff = 0.0;
};

AnchorRange anchor_range(const std::vector<double>& z, double H, double T,
                         BoundaryPolicy policy) {
  AnchorRange r;
  if (policy == BoundaryPolicy::RestrictAnchors) {
    r.begin = static_cast<std::size_t>(
        std::lower_bound(z.begin(), z.end(), H) - z.begin());
    r.end = static_cast<std::size_t>(
        std::upper_bound(z.begin(), z.end(), T - H) - z.begin());
    r.t_eff = T - 2.0 * H;
  } else {
    r.begin = 0;
    r.end = z.size();
    r.t_eff = T;
  }
  return r;
}

// Sum over anchors tau of sum over tau' in z of (2H - |tau' - tau|)^+,
// with three monotone pointers and prefix sums over z.
double triangle_window_sum(const std::vector<double>& anchors,
                           std::size_t a_begin, std::size_t a_end,
                           const std::vector<double>& z,
                           const std::vector<double>& prefix, double H) {
  double total = 0.0;
  std::size_t lo = 0, mid = 0, hi = 0;
  for (std::size_t a = a_begin; a < a_end; ++a) {
    const double tau = anchors[a];
    while (lo < z.size() && z[lo] <= tau - 2.0 * H) ++lo;
    while (mid < z.size() && z[mid] <= tau) ++mid;
    while (hi < z.size() && z[hi] < tau + 2.0 * H) ++hi;
    const double left_count = static_cast<double>(mid - lo);
    const double left_sum = prefix[mid] - prefix[lo];
    const double right_count = static_cast<double>(hi - mid);
    const double right_sum = prefix[hi] - prefix[mid];
    total += left_count * (2.0 * H - tau) + left_sum;
    total += right_count * (2.0 * H + tau) - right_sum;
  }
  return total;
}

// Single pass over the anchors of component i producing both the
// covariance row and the first skewness term, sharing the window counts.
void anchored_window_rows(const EventStream& stream, int i,
                          const CumulantConfig& cfg, const Vector& lambda,
                          Vector* c_row, Vector* k_row) {
  const int d = stream.dim();
  const double H = cfg.H;
  const auto& zi = stream.events[static_cast<std::size_t>(i)];
  const AnchorRange ar =
      anchor_range(zi, H, stream.duration, cfg.boundary);
  if (c_row) c_row->setZero(d);
  if (k_row) k_row->setZero(d);
  std::vector<std::size_t> lo(static_cast<std::size_t>(d), 0);
  std::vector<std::size_t> hi(static_cast<std::size_t>(d), 0);
  Vector w(d);
  for (std::size_t a = ar.begin; a < ar.end; ++a) {
    const double tau = zi[a];
    for (int j = 0; j < d; ++j) {
      const auto& zj = stream.events[static_cast<std::size_t>(j)];
      auto& l = lo[static_cast<std::size_t>(j)];
      auto& h = hi[static_cast<std::size_t>(j)];
      while (h < zj.size() && zj[h] <= tau + H) ++h;
      while (l < zj.size() && zj[l] <= tau - H) ++l;
      w[j] = static_cast<double>(h - l) - 2.0 * H * lambda[j];
    }
    if (c_row) *c_row += w;
    if (k_row) *k_row += w[i] * w;
  }
  if (c_row) *c_row /= ar.t_eff;
  if (k_row) *k_row /= ar.t_eff;
}

}  // namespace

Matrix estimate_covariance(const EventStream& stream,
                           const CumulantConfig& cfg) {
  stream.validate();
  cfg.validate(stream.duration);
  const int d = stream.dim();
  const Vector lambda = estimate_lambda(stream);
  Matrix C(d, d);
  Vector row;
  for (int i = 0; i < d; ++i) {
    anchored_window_rows(stream, i, cfg, lambda, &row, nullptr);
    C.row(i) = row.transpose();
  }
  if (cfg.symmetrize_C) C = ((C + C.transpose()) / 2.0).eval();
  return C;
}

Matrix estimate_skewness(const EventStream& stream,
                         const CumulantConfig& cfg) {
  stream.validate();
  cfg.validate(stream.duration);
  const int d = stream.dim();
  const double H = cfg.H;
  const double T = stream.duration;
  const Vector lambda = estimate_lambda(stream);
  Matrix K(d, d);
  std::vector<std::vector<double>> prefix(static_cast<std::size_t>(d));
  for (int j = 0; j < d; ++j) {
    const auto& zj = stream.events[static_cast<std::size_t>(j)];
    auto& p = prefix[static_cast<std::size_t>(j)];
    p.assign(zj.size() + 1, 0.0);
    std::partial_sum(zj.begin(), zj.end(), p.begin() + 1);
  }
  Vector first;
  for (int i = 0; i < d; ++i) {
    const auto& zi = stream.events[static_cast<std::size_t>(i)];
    const AnchorRange ar = anchor_range(zi, H, T, cfg.boundary);
    anchored_window_rows(stream, i, cfg, lambda, nullptr, &first);
    for (int j = 0; j < d; ++j) {
      const auto& zj = stream.events[static_cast<std::size_t>(j)];
      const double cross =
          triangle_window_sum(zi, ar.begin, ar.end, zj,
                              prefix[static_cast<std::size_t>(j)], H);
      K(i, j) = first[j] - lambda[i] / ar.t_eff * cross +
                4.0 * H * H * lambda[i] * lambda[i] * lambda[j];
    }
  }
  return K;
}

CumulantSet estimate_cumulants(const EventStream& stream,
                               const CumulantConfig& cfg) {
  CumulantSet cs;
  cs.Lambda = estimate_lambda(stream);
  cs.C = estimate_covariance(stream, cfg);
  cs.Kc = estimate_skewness(stream, cfg);
  cs.H = cfg.H;
  cs.duration = stream.duration;
  cs.source = CumulantSource::Empirical;
  return cs;
}

double pointwise_covariance_density(const EventStream& stream, int i, int j,
                                    double t, double h) {
  if (!(h > 0.0)) throw Error("density bin width h must be positive");
  const auto& zi = stream.events[static_cast<std::size_t>(i)];
  const auto& zj = stream.events[static_cast<std::size_t>(j)];
  const double lambda_j =
      static_cast<double>(zj.size()) / stream.duration;
  double sum = 0.0;
  std::size_t lo = 0, hi = 0;
  for (const double tau : zi) {
    while (lo < zj.size() && zj[lo] <= tau + t) ++lo;
    while (hi < zj.size() && zj[hi] <= tau + t + h) ++hi;
    sum += static_cast<double>(hi - lo) - h * lambda_j;
  }
  return sum / (h * stream.duration);
}

double select_H(const EventStream& stream, std::span<const double> grid,
                double multiple, double h) {
  if (grid.empty()) throw Error("lag grid must be non-empty");
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0.0)) throw Error("lag grid entries must be positive");
    if (k > 0 && !(grid[k] > grid[k - 1]))
      throw Error("lag grid must be strictly increasing");
  }
  if (!(multiple >= 1.0)) throw Error("multiple must be >= 1");
  if (h <= 0.0) {
    if (grid.size() >= 2) {
      std::vector<double> gaps;
      gaps.reserve(grid.size() - 1);
      for (std::size_t k = 1; k < grid.size(); ++k)
        gaps.push_back(grid[k] - grid[k - 1]);
      std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2,
                       gaps.end());
      h = gaps[gaps.size() / 2];
    } else {
      h = grid[0];
    }
  }
  const int d = stream.dim();
  std::vector<double> peak(grid.size(), 0.0);
  for (std::size_t k = 0; k < grid.size(); ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        peak[k] = std::max(
            peak[k],
            std::abs(pointwise_covariance_density(stream, i, j, grid[k], h)));

  // Noise floor: 3x the median magnitude over the last quartile of lags.
  std::vector<double> tail(peak.begin() + 3 * static_cast<long>(peak.size()) / 4,
                           peak.end());
  std::nth_element(tail.begin(), tail.begin() + tail.size() / 2, tail.end());
  const double floor = 3.0 * tail[tail.size() / 2];

  double suffix_max = 0.0;
  std::ptrdiff_t tau_index = -1;
  for (std::ptrdiff_t k = static_cast<std::ptrdiff_t>(peak.size()) - 1; k >= 0;
       --k) {
    suffix_max = std::max(suffix_max, peak[static_cast<std::size_t>(k)]);
    if (suffix_max <= floor) tau_index = k;
  }
  if (tau_index < 0)
    throw NoDecayDetected("covariance density never settles below the floor");
  const double tau_c = grid[static_cast<std::size_t>(tau_index)];
  return std::min(multiple * tau_c, stream.duration / 2.0 * (1.0 - 1e-9));
}

CumulantSet aggregate_cumulants(std::span<const CumulantSet> parts) {
  if (parts.empty()) throw MismatchedShapes("no cumulant sets to aggregate");
  const int d = parts[0].dim();
  const double H = parts[0].H;
  CumulantSet out;
  out.Lambda = Vector::Zero(d);
  out.C = Matrix::Zero(d, d);
  out.Kc = Matrix::Zero(d, d);
  out.H = H;
  out.source = CumulantSource::Empirical;
  double total = 0.0;
  for (const auto& p : parts) {
    if (p.dim() != d) throw MismatchedShapes("dimension mismatch");
    if (p.H != H) throw MismatchedShapes("window half-width mismatch");
    if (!(p.duration > 0.0))
      throw MismatchedShapes("aggregation requires positive durations");
    out.Lambda += p.duration * p.Lambda;
    out.C += p.duration * p.C;
    out.Kc += p.duration * p.Kc;
    total += p.duration;
  }
  out.Lambda /= total;
  out.C /= total;
  out.Kc /= total;
  out.duration = total;
  return out;
}

}  // namespace hawkes
