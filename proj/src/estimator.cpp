#include "hawkes/estimator.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <future>
#include <random>

#include "hawkes/model.hpp"
#include "hawkes/simulate.hpp"

namespace hawkes {

void NphcConfig::validate() const {
  if (max_iterations < 1) throw Error("max_iterations must be >= 1");
  if (!(tolerance > 0.0)) throw Error("tolerance must be positive");
  if (restarts < 0) throw Error("restarts must be non-negative");
  if (!(perturbation_scale >= 0.0))
    throw Error("perturbation_scale must be non-negative");
  if (step_rule == StepRule::FixedStep && !(fixed_step > 0.0))
    throw Error("fixed_step must be positive");
}

double kappa(const Matrix& C_hat, const Matrix& Kc_hat) {
  const double c2 = C_hat.squaredNorm();
  const double k2 = Kc_hat.squaredNorm();
  if (c2 == 0.0 && k2 == 0.0)
    throw DegenerateCumulants("both cumulant norms are zero");
  return k2 / (k2 + c2);
}

double loss(const Matrix& R, const CumulantSet& cumulants, double kappa) {
  const Matrix C = covariance_from_r(R, cumulants.Lambda);
  const Matrix Kc = kc_from_r(R, cumulants.Lambda);
  return (1.0 - kappa) * (Kc - cumulants.Kc).squaredNorm() +
         kappa * (C - cumulants.C).squaredNorm();
}

Matrix loss_gradient(const Matrix& R, const CumulantSet& cumulants,
                     double kappa) {
  const auto D = cumulants.Lambda.asDiagonal();
  const Matrix RL = R * D;
  const Matrix C = RL * R.transpose();
  const Matrix M = C - RL;
  const Matrix W = R.cwiseProduct(M);
  const Matrix R2 = R.cwiseProduct(R);
  const Matrix Kc = R2 * C + 2.0 * W * R.transpose();

  const Matrix EK = 2.0 * (1.0 - kappa) * (Kc - cumulants.Kc);
  const Matrix EC = 2.0 * kappa * (C - cumulants.C);

  const Matrix EKR = EK * R;
  const Matrix Mbar = 2.0 * EKR.cwiseProduct(R);
  const Matrix Cbar = EC + R2.transpose() * EK + Mbar;

  Matrix grad = 2.0 * EK.transpose() * W;       // Kc = ... + 2 W R^T
  grad += 2.0 * EKR.cwiseProduct(M);            // W = R o M
  grad += 2.0 * R.cwiseProduct(EK * C);         // R2 = R o R
  grad += Cbar.transpose() * RL;                // C = RL R^T, dR^T side
  grad += (Cbar * R - Mbar) * D;                // RL adjoint through R D
  return grad;
}

Matrix initialize_R(const CumulantSet& cumulants) {
  const int d = cumulants.dim();
  for (int i = 0; i < d; ++i)
    if (!(cumulants.Lambda[i] > 0.0))
      throw DegenerateLambda("Lambda must be positive entrywise; drop empty "
                             "components before estimating");
  const Matrix Csym = (cumulants.C + cumulants.C.transpose()) / 2.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(Csym);
  const Vector vals = es.eigenvalues().cwiseMax(0.0);
  const Matrix sqrtC = es.eigenvectors() * vals.cwiseSqrt().asDiagonal() *
                       es.eigenvectors().transpose();
  return sqrtC * cumulants.Lambda.cwiseSqrt().cwiseInverse().asDiagonal();
}

namespace {

struct RunOutcome {
  Matrix R;
  double final_loss = 0.0;
  std::vector<double> trajectory;
  bool converged = false;
};

RunOutcome minimize(Matrix R, const CumulantSet& cumulants, double kap,
                    const NphcConfig& cfg) {
  RunOutcome out;
  const double scale =
      kap * cumulants.C.squaredNorm() +
      (1.0 - kap) * cumulants.Kc.squaredNorm();
  const double loss_floor = 1e-24 * std::max(scale, 1e-300);
  double f = loss(R, cumulants, kap);
  out.trajectory.push_back(f);

  // progress is bursty under Barzilai-Borwein steps, so stalling is judged
  // over a window rather than per iteration
  constexpr int kWindow = 25;

  Matrix prev_R, prev_g;
  double step = 0.0;
  bool use_bb2 = false;
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    const Matrix g = loss_gradient(R, cumulants, kap);
    const double g2 = g.squaredNorm();
    if (!(g2 > 0.0) || f <= loss_floor) {
      out.converged = true;
      break;
    }

    if (cfg.step_rule == StepRule::FixedStep) {
      prev_R = R;
      R -= cfg.fixed_step * g;
      f = loss(R, cumulants, kap);
      out.trajectory.push_back(f);
      const double prev_f = out.trajectory[out.trajectory.size() - 2];
      if (std::abs(prev_f - f) <= cfg.tolerance * std::max(prev_f, 1e-300)) {
        out.converged = true;
        break;
      }
      continue;
    }

    // Alternating Barzilai-Borwein trial step, then monotone Armijo
    // backtracking.
    if (iter == 0) {
      step = 0.01 * (1.0 + R.cwiseAbs().maxCoeff()) /
             (g.cwiseAbs().maxCoeff() + 1e-300);
    } else {
      const Matrix s = R - prev_R;
      const Matrix y = g - prev_g;
      const double sy = s.cwiseProduct(y).sum();
      const double yy = y.squaredNorm();
      if (sy > 0.0) step = use_bb2 && yy > 0.0 ? sy / yy : s.squaredNorm() / sy;
      use_bb2 = !use_bb2;
    }
    step = std::clamp(step, 1e-18, 1e12);

    double t = step;
    double f_new = f;
    Matrix R_new;
    bool accepted = false;
    for (int back = 0; back < 80; ++back) {
      R_new = R - t * g;
      f_new = loss(R_new, cumulants, kap);
      if (f_new <= f - 1e-4 * t * g2) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;

    prev_R = R;
    prev_g = g;
    R = R_new;
    f = f_new;
    out.trajectory.push_back(f);
    const std::size_t n = out.trajectory.size();
    if (n > kWindow) {
      const double f_old = out.trajectory[n - 1 - kWindow];
      if (f_old - f <= kWindow * cfg.tolerance * std::max(f_old, 1e-300)) {
        out.converged = true;
        break;
      }
    }
  }
  out.R = std::move(R);
  out.final_loss = f;
  return out;
}

// The covariance map is blind to R -> R (L^1/2 O L^-1/2) for any orthogonal
// O; only the third-cumulant term separates points on that manifold. Restart
// candidates therefore search it: sign flips and Haar-random rotations give
// coarse coverage, and the best factors are polished by per-plane Givens
// angle sweeps before the descent runs start.
class ManifoldSearch {
 public:
  ManifoldSearch(const Matrix& R0, const CumulantSet& cumulants, double kap)
      : R0_(R0),
        cumulants_(cumulants),
        kap_(kap),
        d_(static_cast<int>(R0.cols())),
        scale_left_(R0 * cumulants.Lambda.cwiseSqrt().asDiagonal()),
        scale_right_(cumulants.Lambda.cwiseSqrt().cwiseInverse()) {}

  Matrix point(const Matrix& O) const {
    return scale_left_ * O * scale_right_.asDiagonal();
  }
  double score(const Matrix& O) const {
    return loss(point(O), cumulants_, kap_);
  }

  // one pass over all rotation planes, line-searching each angle
  void givens_sweep(Matrix& O, double& f) const {
    for (int p = 0; p < d_; ++p)
      for (int q = p + 1; q < d_; ++q) {
        double best_theta = 0.0;
        double best_f = f;
        auto eval = [&](double theta) {
          Matrix Ot = O;
          const double c = std::cos(theta), s = std::sin(theta);
          Ot.col(p) = c * O.col(p) + s * O.col(q);
          Ot.col(q) = -s * O.col(p) + c * O.col(q);
          return score(Ot);
        };
        constexpr int kGrid = 16;
        for (int k = 1; k < kGrid; ++k) {
          const double theta = -M_PI + 2.0 * M_PI * k / kGrid;
          const double fk = eval(theta);
          if (fk < best_f) {
            best_f = fk;
            best_theta = theta;
          }
        }
        double lo = best_theta - M_PI / kGrid, hi = best_theta + M_PI / kGrid;
        for (int it = 0; it < 24; ++it) {
          const double m1 = lo + (hi - lo) * 0.382;
          const double m2 = hi - (hi - lo) * 0.382;
          if (eval(m1) < eval(m2))
            hi = m2;
          else
            lo = m1;
        }
        const double polished = (lo + hi) / 2.0;
        if (eval(polished) < best_f) {
          best_f = eval(polished);
          best_theta = polished;
        }
        if (best_theta != 0.0) {
          const double c = std::cos(best_theta), s = std::sin(best_theta);
          const Vector op = O.col(p), oq = O.col(q);
          O.col(p) = c * op + s * oq;
          O.col(q) = -s * op + c * oq;
          f = best_f;
        }
      }
  }

 private:
  const Matrix& R0_;
  const CumulantSet& cumulants_;
  double kap_;
  int d_;
  Matrix scale_left_;
  Vector scale_right_;
};

// Weighted residual stack of the two moment mismatches; loss == |r|^2.
Vector moment_residuals(const Matrix& R, const CumulantSet& cumulants,
                        double kap) {
  const int d = static_cast<int>(R.rows());
  const Matrix dK = kc_from_r(R, cumulants.Lambda) - cumulants.Kc;
  const Matrix dC = covariance_from_r(R, cumulants.Lambda) - cumulants.C;
  Vector r(2 * d * d);
  const double wk = std::sqrt(1.0 - kap), wc = std::sqrt(kap);
  int at = 0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) r[at++] = wk * dK(i, j);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) r[at++] = wc * dC(i, j);
  return r;
}

// Levenberg-Marquardt polish for the slow tail of the first-order descent;
// the Jacobian is taken by central differences on the residual stack.
void lm_polish(Matrix& R, const CumulantSet& cumulants, double kap,
               double loss_floor, double* f, std::vector<double>* trajectory) {
  const int d = static_cast<int>(R.rows());
  const int n = d * d;
  const int m = 2 * n;
  double lambda = 1e-3;
  for (int iter = 0; iter < 120 && *f > loss_floor; ++iter) {
    Eigen::MatrixXd J(m, n);
    Matrix probe = R;
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        const double h = 1e-7 * (1.0 + std::abs(R(a, b)));
        probe(a, b) = R(a, b) + h;
        const Vector fwd = moment_residuals(probe, cumulants, kap);
        probe(a, b) = R(a, b) - h;
        const Vector bwd = moment_residuals(probe, cumulants, kap);
        probe(a, b) = R(a, b);
        J.col(a * d + b) = (fwd - bwd) / (2.0 * h);
      }
    const Vector r = moment_residuals(R, cumulants, kap);
    const Matrix A = J.transpose() * J;
    const Vector g = J.transpose() * r;
    bool accepted = false;
    for (int bump = 0; bump < 12; ++bump) {
      Matrix H = A;
      H.diagonal().array() += lambda * (A.diagonal().array() + 1e-12);
      const Vector delta = H.ldlt().solve(-g);
      Matrix R_new = R;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) R_new(a, b) += delta[a * d + b];
      const double f_new = loss(R_new, cumulants, kap);
      if (f_new < *f) {
        R = std::move(R_new);
        const double decrease = (*f - f_new) / std::max(*f, 1e-300);
        *f = f_new;
        if (trajectory) trajectory->push_back(*f);
        lambda = std::max(lambda * 0.3, 1e-12);
        accepted = true;
        if (decrease < 1e-15) iter = 120;
        break;
      }
      lambda *= 4.0;
    }
    if (!accepted) break;
  }
}

std::vector<Matrix> ranked_starts(const Matrix& R0,
                                  const CumulantSet& cumulants, double kap,
                                  int wanted, std::mt19937_64& gen) {
  const int d = static_cast<int>(R0.cols());
  const ManifoldSearch search(R0, cumulants, kap);

  std::vector<Matrix> factors;
  factors.push_back(Matrix::Identity(d, d));
  if (d <= 8) {
    for (std::uint64_t m = 1; m < (1ULL << d); ++m) {
      Matrix S = Matrix::Identity(d, d);
      for (int j = 0; j < d; ++j)
        if (m >> j & 1) S(j, j) = -1.0;
      factors.push_back(std::move(S));
    }
  } else {
    for (int k = 0; k < 255; ++k) {
      const std::uint64_t m = gen() & ((1ULL << d) - 1);
      Matrix S = Matrix::Identity(d, d);
      for (int j = 0; j < d; ++j)
        if (m >> j & 1) S(j, j) = -1.0;
      factors.push_back(std::move(S));
    }
  }
  if (d > 1) {
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int k = 0; k < 64 + 16 * wanted; ++k) {
      Matrix A(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) A(i, j) = normal(gen);
      Matrix O = Eigen::HouseholderQR<Matrix>(A).householderQ();
      factors.push_back(std::move(O));
    }
  }

  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(factors.size());
  for (std::size_t k = 0; k < factors.size(); ++k)
    scored.emplace_back(search.score(factors[k]), k);
  std::sort(scored.begin(), scored.end());

  std::vector<Matrix> candidates;
  candidates.push_back(R0);
  if (d > 1) {
    const int refine = std::min<int>(4 + wanted, static_cast<int>(scored.size()));
    for (int k = 0; k < refine; ++k) {
      Matrix O = factors[scored[static_cast<std::size_t>(k)].second];
      double f = scored[static_cast<std::size_t>(k)].first;
      for (int sweep = 0; sweep < 3; ++sweep) search.givens_sweep(O, f);
      candidates.push_back(search.point(O));
    }
  }
  for (std::size_t k = 0; k < std::min<std::size_t>(scored.size(), 32); ++k)
    candidates.push_back(search.point(factors[scored[k].second]));

  std::vector<std::pair<double, std::size_t>> ranked;
  ranked.reserve(candidates.size());
  for (std::size_t k = 0; k < candidates.size(); ++k)
    ranked.emplace_back(loss(candidates[k], cumulants, kap), k);
  std::sort(ranked.begin(), ranked.end());

  const double min_dist = 0.05 * std::max(R0.norm(), 1e-12);
  std::vector<Matrix> out;
  for (const auto& [f, idx] : ranked) {
    if (static_cast<int>(out.size()) >= wanted) break;
    bool distinct = true;
    for (const auto& chosen : out)
      if ((candidates[idx] - chosen).norm() < min_dist) {
        distinct = false;
        break;
      }
    if (distinct) out.push_back(candidates[idx]);
  }
  while (static_cast<int>(out.size()) < wanted) out.push_back(R0);
  return out;
}

}  // namespace

EstimationResult estimate(const CumulantSet& cumulants,
                          const NphcConfig& cfg) {
  cfg.validate();
  const int d = cumulants.dim();
  if (d < 1) throw Error("cumulants must have dimension >= 1");
  const double kap = kappa(cumulants.C, cumulants.Kc);
  const Matrix R0 = initialize_R(cumulants);

  std::mt19937_64 jitter_gen(mix_seed(cfg.seed, 0xabcd));
  auto jitter_uniform = [&jitter_gen] {
    return static_cast<double>(jitter_gen() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
  };
  // Primary pool: the base start plus `restarts` jittered copies. On top of
  // that, a search over the covariance-invariant manifold (sign flips,
  // random rotations, Givens-refined factors) races through short descents;
  // its leaders are admitted to the pool only when they drive the loss to
  // the solved floor. Exact moment systems are cracked by the explorer
  // while noisy fits stay with the spec-stable local restarts.
  const double scale = kap * cumulants.C.squaredNorm() +
                       (1.0 - kap) * cumulants.Kc.squaredNorm();
  const double loss_floor = 1e-24 * std::max(scale, 1e-300);
  const double solved_floor = 1e-9 * std::max(scale, 1e-300);

  std::vector<Matrix> starts;
  starts.push_back(R0);
  for (int r = 0; r < cfg.restarts; ++r) {
    Matrix Rr = R0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        Rr(i, j) *= 1.0 + cfg.perturbation_scale * jitter_uniform();
    starts.push_back(std::move(Rr));
  }
  const std::size_t local_count = starts.size();

  const bool explore = cfg.restarts > 0 &&
                       cfg.step_rule == StepRule::BacktrackingLineSearch;
  if (explore) {
    std::vector<Matrix> candidates =
        ranked_starts(R0, cumulants, kap, 4 + cfg.restarts, jitter_gen);
    NphcConfig probe_cfg = cfg;
    probe_cfg.max_iterations = std::min(cfg.max_iterations, 600);
    std::vector<std::pair<double, Matrix>> raced;
    for (const auto& c : candidates) {
      RunOutcome probe = minimize(c, cumulants, kap, probe_cfg);
      raced.emplace_back(probe.final_loss, std::move(probe.R));
    }
    std::sort(raced.begin(), raced.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t k = 0; k < std::min<std::size_t>(raced.size(), 3); ++k)
      starts.push_back(raced[k].second);
  }

  std::vector<std::future<RunOutcome>> futs;
  futs.reserve(starts.size());
  for (const auto& s : starts)
    futs.push_back(std::async(std::launch::async, [&, s] {
      RunOutcome run = minimize(s, cumulants, kap, cfg);
      if (cfg.step_rule == StepRule::BacktrackingLineSearch)
        lm_polish(run.R, cumulants, kap, loss_floor, &run.final_loss,
                  &run.trajectory);
      return run;
    }));
  std::vector<RunOutcome> runs;
  runs.reserve(starts.size());
  for (auto& fut : futs) runs.push_back(fut.get());

  auto g_norm = [&](const RunOutcome& run) {
    Eigen::FullPivLU<Matrix> lu(run.R);
    if (!lu.isInvertible()) return std::numeric_limits<double>::infinity();
    return (Matrix::Identity(d, d) - lu.inverse()).norm();
  };
  int best = 0;
  for (int r = 1; r < static_cast<int>(runs.size()); ++r) {
    if (static_cast<std::size_t>(r) >= local_count &&
        runs[static_cast<std::size_t>(r)].final_loss > solved_floor)
      continue;
    const double fr = runs[static_cast<std::size_t>(r)].final_loss;
    const double fb = runs[static_cast<std::size_t>(best)].final_loss;
    const double tie = 1e-12 * std::max({fr, fb, 1e-300});
    if (fr < fb - tie ||
        (std::abs(fr - fb) <= tie &&
         g_norm(runs[static_cast<std::size_t>(r)]) <
             g_norm(runs[static_cast<std::size_t>(best)])))
      best = r;
  }
  const RunOutcome& win = runs[static_cast<std::size_t>(best)];

  Eigen::FullPivLU<Matrix> lu(win.R);
  if (!lu.isInvertible())
    throw SingularRHat("estimated R is not invertible");
  const Matrix R_inv = lu.inverse();

  EstimationResult res;
  res.R_hat = win.R;
  res.G_hat = Matrix::Identity(d, d) - R_inv;
  res.Psi_hat = win.R - Matrix::Identity(d, d);
  res.mu_hat = R_inv * cumulants.Lambda;
  res.Lambda_hat = cumulants.Lambda;
  res.kappa = kap;
  res.final_loss = win.final_loss;
  res.loss_trajectory = win.trajectory;
  res.spectral_radius = spectral_radius(res.G_hat);
  res.largest_singular_value = largest_singular_value(res.G_hat);
  res.converged = win.converged;
  res.restart_index = best;
  res.nonstationary_warning = res.spectral_radius >= 1.0;
  res.negative_mu_warning = (res.mu_hat.array() < 0.0).any();
  return res;
}

}  // namespace hawkes
