#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "hawkes/model.hpp"

namespace oracles {

namespace {

double simpson(const std::function<double(double)>& f, double a, double fa,
               double b, double fb, double m, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& f, double a, double fa,
                double b, double fb, double m, double fm, double whole,
                double tol, int depth) {
  const double lm = (a + m) / 2.0, rm = (m + b) / 2.0;
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(f, a, fa, m, fm, lm, flm);
  const double right = simpson(f, m, fm, b, fb, rm, frm);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(f, a, fa, m, fm, lm, flm, left, tol / 2.0, depth - 1) +
         adaptive(f, m, fm, b, fb, rm, frm, right, tol / 2.0, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol) {
  const double m = (a + b) / 2.0;
  const double fa = f(a), fb = f(b), fm = f(m);
  return adaptive(f, a, fa, b, fb, m, fm, simpson(f, a, fa, b, fb, m, fm),
                  tol, 48);
}

double integrate_geometric(const std::function<double(double)>& f, double a,
                           double b, double tol) {
  double total = 0.0;
  double lo = a;
  double width = std::max(1e-3, std::abs(a) * 0.5);
  while (lo < b) {
    const double hi = std::min(b, lo + width);
    total += integrate(f, lo, hi, tol);
    lo = hi;
    width *= 2.0;
  }
  return total;
}

Matrix finite_difference_gradient(const std::function<double(const Matrix&)>& f,
                                  const Matrix& x, double h) {
  Matrix g = Matrix::Zero(x.rows(), x.cols());
  Matrix probe = x;
  for (int i = 0; i < x.rows(); ++i)
    for (int j = 0; j < x.cols(); ++j) {
      const double step = h * (1.0 + std::abs(x(i, j)));
      probe(i, j) = x(i, j) + step;
      const double fwd = f(probe);
      probe(i, j) = x(i, j) - step;
      const double bwd = f(probe);
      probe(i, j) = x(i, j);
      g(i, j) = (fwd - bwd) / (2.0 * step);
    }
  return g;
}

double naive_triangle_sum(const std::vector<double>& anchors,
                          std::size_t a_begin, std::size_t a_end,
                          const std::vector<double>& z, double H) {
  double total = 0.0;
  for (std::size_t a = a_begin; a < a_end; ++a)
    for (const double tp : z) {
      const double w = 2.0 * H - std::abs(tp - anchors[a]);
      if (w > 0.0) total += w;
    }
  return total;
}

namespace {

struct Anchors {
  std::size_t begin, end;
  double t_eff;
};

Anchors anchors_for(const std::vector<double>& z, double H, double T,
                    hawkes::BoundaryPolicy policy) {
  if (policy == hawkes::BoundaryPolicy::RestrictAnchors) {
    const auto lo = std::lower_bound(z.begin(), z.end(), H);
    const auto hi = std::upper_bound(z.begin(), z.end(), T - H);
    return {static_cast<std::size_t>(lo - z.begin()),
            static_cast<std::size_t>(hi - z.begin()), T - 2.0 * H};
  }
  return {0, z.size(), T};
}

double window_count(const std::vector<double>& z, double lo, double hi) {
  // events in (lo, hi]
  return static_cast<double>(std::upper_bound(z.begin(), z.end(), hi) -
                             std::upper_bound(z.begin(), z.end(), lo));
}

}  // namespace

Matrix naive_covariance(const EventStream& stream,
                        const hawkes::CumulantConfig& cfg) {
  const int d = stream.dim();
  const double T = stream.duration;
  const Vector lambda = hawkes::estimate_lambda(stream);
  Matrix C = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const auto& zi = stream.events[static_cast<std::size_t>(i)];
    const Anchors ar = anchors_for(zi, cfg.H, T, cfg.boundary);
    for (int j = 0; j < d; ++j) {
      const auto& zj = stream.events[static_cast<std::size_t>(j)];
      double s = 0.0;
      for (std::size_t a = ar.begin; a < ar.end; ++a)
        s += window_count(zj, zi[a] - cfg.H, zi[a] + cfg.H) -
             2.0 * cfg.H * lambda[j];
      C(i, j) = s / ar.t_eff;
    }
  }
  if (cfg.symmetrize_C) C = ((C + C.transpose()) / 2.0).eval();
  return C;
}

Matrix naive_skewness(const EventStream& stream,
                      const hawkes::CumulantConfig& cfg) {
  const int d = stream.dim();
  const double T = stream.duration;
  const double H = cfg.H;
  const Vector lambda = hawkes::estimate_lambda(stream);
  Matrix K = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const auto& zi = stream.events[static_cast<std::size_t>(i)];
    const Anchors ar = anchors_for(zi, H, T, cfg.boundary);
    for (int j = 0; j < d; ++j) {
      const auto& zj = stream.events[static_cast<std::size_t>(j)];
      double first = 0.0;
      for (std::size_t a = ar.begin; a < ar.end; ++a) {
        const double wi = window_count(zi, zi[a] - H, zi[a] + H) -
                          2.0 * H * lambda[i];
        const double wj = window_count(zj, zi[a] - H, zi[a] + H) -
                          2.0 * H * lambda[j];
        first += wi * wj;
      }
      const double cross =
          naive_triangle_sum(zi, ar.begin, ar.end, zj, H);
      K(i, j) = first / ar.t_eff - lambda[i] / ar.t_eff * cross +
                4.0 * H * H * lambda[i] * lambda[i] * lambda[j];
    }
  }
  return K;
}

double scalar_covariance(double R, double lambda) { return lambda * R * R; }

double scalar_skewness(double R, double lambda) {
  const double C = scalar_covariance(R, lambda);
  return 3.0 * R * R * C - 2.0 * lambda * R * R * R;
}

double ks_statistic(const std::vector<double>& sorted_data,
                    const std::function<double(double)>& cdf) {
  const std::size_t n = sorted_data.size();
  double dmax = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double F = cdf(sorted_data[k]);
    const double lo = static_cast<double>(k) / static_cast<double>(n);
    const double hi = static_cast<double>(k + 1) / static_cast<double>(n);
    dmax = std::max({dmax, std::abs(F - lo), std::abs(F - hi)});
  }
  return dmax;
}

double ks_pvalue(double statistic, std::size_t n) {
  const double lambda =
      (std::sqrt(static_cast<double>(n)) + 0.12 +
       0.11 / std::sqrt(static_cast<double>(n))) *
      statistic;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k)
    sum += (k % 2 == 1 ? 1.0 : -1.0) *
           std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

Matrix random_g(int d, double radius, std::uint64_t seed, bool mixed_signs) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(mixed_signs ? -0.4 : 0.05, 1.0);
  Matrix G(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) G(i, j) = u(gen);
  const double rho = hawkes::spectral_radius(G);
  if (rho > 0.0) G *= radius / rho;
  return G;
}

HawkesModel exponential_model(const Matrix& G, const Vector& mu,
                              std::uint64_t seed, double beta_lo,
                              double beta_hi) {
  const int d = static_cast<int>(G.rows());
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(beta_lo, beta_hi);
  HawkesModel model(d);
  model.mu = mu;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      if (G(i, j) == 0.0) continue;
      hawkes::KernelSpec k;
      k.family = hawkes::KernelFamily::Exponential;
      k.alpha = G(i, j);
      k.beta = u(gen);
      model.kernel(i, j) = k;
    }
  return model;
}

SampleStats sample_stats(const std::vector<double>& xs) {
  SampleStats s;
  const double n = static_cast<double>(xs.size());
  for (double x : xs) s.mean += x;
  s.mean /= n;
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.sd = xs.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  s.se_mean = s.sd / std::sqrt(n);
  return s;
}

}  // namespace oracles
