// Acceptance suite: every criterion prints one pass/fail line with the
// measured values next to its bound. Exit code is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "hawkes/analysis.hpp"
#include "hawkes/cumulants.hpp"
#include "hawkes/estimator.hpp"
#include "hawkes/model.hpp"
#include "hawkes/simulate.hpp"
#include "support/branching_sim.hpp"
#include "support/oracles.hpp"
#include "support/synthetic_models.hpp"

using namespace hawkes;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = true;
  std::string detail;
};

void append(Outcome* out, bool ok, const std::string& text) {
  out->pass = out->pass && ok;
  if (!out->detail.empty()) out->detail += ", ";
  out->detail += text;
}

std::string num(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.4g", x);
  return buf;
}

// ---------------------------------------------------------------- 1
Outcome poisson_null() {
  const auto start = Clock::now();
  Outcome out;
  HawkesModel m(3);
  m.mu << 1.0, 2.0, 3.0;
  std::vector<double> grid;
  for (double t = 0.01; t <= 10.0; t *= 1.35) grid.push_back(t);
  std::vector<CumulantSet> parts;
  CumulantConfig ccfg;
  for (std::uint64_t k = 0; k < 10; ++k) {
    SimConfig sc;
    sc.horizon = 1e4;
    sc.seed = mix_seed(100, k);
    const EventStream s = simulate(m, sc).stream;
    if (k == 0) ccfg.H = select_H(s, grid, 5.0);
    parts.push_back(estimate_cumulants(s, ccfg));
  }
  NphcConfig cfg;
  cfg.seed = 2;
  const EstimationResult res = estimate(aggregate_cumulants(parts), cfg);
  const double mean_g = res.G_hat.cwiseAbs().mean();
  double mu_dev = 0.0;
  for (int i = 0; i < 3; ++i)
    mu_dev = std::max(mu_dev,
                      std::abs(res.mu_hat[i] / res.Lambda_hat[i] - 1.0));
  const double elapsed = seconds_since(start);
  append(&out, mean_g < 0.05, "mean|G|=" + num(mean_g) + " (<0.05)");
  append(&out, mu_dev < 0.05, "max mu dev=" + num(mu_dev) + " (<0.05)");
  append(&out, elapsed < 30.0, num(elapsed) + " s (<30)");
  return out;
}

// ---------------------------------------------------------------- 2
Outcome exponential_1d() {
  const auto start = Clock::now();
  Outcome out;
  HawkesModel m(1);
  m.mu[0] = 1.0;
  m.kernel(0, 0) = KernelSpec{KernelFamily::Exponential, 0.5, 1.0, 0.0};

  int in_band = 0;
  CumulantConfig ccfg;
  ccfg.H = 10.0;
  NphcConfig cfg;
  cfg.seed = 2;
  for (std::uint64_t k = 0; k < 10; ++k) {
    SimConfig sc;
    sc.horizon = 1e5;
    sc.seed = mix_seed(2222, k);
    const CumulantSet cs = estimate_cumulants(simulate(m, sc).stream, ccfg);
    const double g = estimate(cs, cfg).G_hat(0, 0);
    if (g >= 0.45 && g <= 0.55) ++in_band;
  }
  append(&out, in_band >= 9,
         "G in [0.45,0.55] on " + std::to_string(in_band) + "/10 seeds (>=9)");

  SimConfig sc;
  sc.horizon = 1e6;
  sc.seed = 4096;
  const EventStream s = simulate(m, sc).stream;
  CumulantConfig big;
  big.H = 20.0;
  const double c_hat = estimate_covariance(s, big)(0, 0);
  const double k_hat = estimate_skewness(s, big)(0, 0);
  append(&out, std::abs(c_hat - 8.0) / 8.0 < 0.05,
         "C=" + num(c_hat) + " (8 +-5%)");
  append(&out, std::abs(k_hat - 64.0) / 64.0 < 0.10,
         "K=" + num(k_hat) + " (64 +-10%)");
  const double elapsed = seconds_since(start);
  append(&out, elapsed < 120.0, num(elapsed) + " s (<120)");
  return out;
}

// ---------------------------------------------------------------- 3
Outcome block10_shapes() {
  const auto start = Clock::now();
  Outcome out;
  const Matrix g_true = oracles::block10_g();
  const double rate = 0.0025;
  const double T = 1e5 / rate;  // ~1e5 events per component

  const HawkesModel rect =
      oracles::block10_model(KernelFamily::Rectangular, rate);
  SimConfig sc;
  sc.horizon = T;
  sc.seed = mix_seed(500, 1);
  const SimResult rect_run = simulate(rect, sc);
  append(&out, rect_run.max_intensity_ratio <= 1.0 + 1e-9,
         "thinning ratio=" + num(rect_run.max_intensity_ratio));

  // the untruncated power-law tail makes per-candidate history scans
  // quadratic at this scale; the exact cluster sampler generates the
  // power-law dataset instead
  const HawkesModel plaw =
      oracles::block10_model(KernelFamily::PowerLaw, rate);
  const auto plaw_run = oracles::simulate_branching(plaw, T, mix_seed(600, 1));

  const double n_rect =
      static_cast<double>(rect_run.stream.total_events()) / 10.0;
  const double n_plaw =
      static_cast<double>(plaw_run.stream.total_events()) / 10.0;
  append(&out, n_rect > 5e4 && n_rect < 2e5,
         "rect events/component=" + num(n_rect));
  append(&out, n_plaw > 5e4 && n_plaw < 2e5,
         "plaw events/component=" + num(n_plaw));

  CumulantConfig ccfg;
  ccfg.H = 120.0;
  NphcConfig cfg;
  cfg.seed = 5;
  const EstimationResult rr =
      estimate(estimate_cumulants(rect_run.stream, ccfg), cfg);
  const EstimationResult pr =
      estimate(estimate_cumulants(plaw_run.stream, ccfg), cfg);
  const double mae_rect = (rr.G_hat - g_true).cwiseAbs().mean();
  const double mae_plaw = (pr.G_hat - g_true).cwiseAbs().mean();
  const double agree = (rr.G_hat - pr.G_hat).cwiseAbs().mean();
  append(&out, mae_rect < 0.05, "rect MAE=" + num(mae_rect) + " (<0.05)");
  append(&out, mae_plaw < 0.05, "plaw MAE=" + num(mae_plaw) + " (<0.05)");
  append(&out, agree < 0.05, "shape agreement=" + num(agree) + " (<0.05)");
  const double elapsed = seconds_since(start);
  append(&out, elapsed < 600.0, num(elapsed) + " s (<600)");
  return out;
}

// ---------------------------------------------------------------- 4
Outcome exact_moment_recovery() {
  Outcome out;
  int recovered = 0;
  int alternative = 0;
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const int d = 1 + rep % 5;
    const double radius = 0.15 + 0.74 * ((rep * 7) % 20) / 20.0;
    const bool mixed = rep % 2 == 1;
    Matrix g;
    Vector mu = Vector::Constant(d, 1.0);
    for (std::uint64_t salt = 0;; ++salt) {
      g = oracles::random_g(d, radius,
                            mix_seed(1000 + static_cast<std::uint64_t>(rep), salt),
                            mixed);
      if ((matrices_from_g(g).R * mu).minCoeff() > 0.05) break;
    }
    const CumulantSet cs = theoretical_cumulants(g, mu);
    NphcConfig cfg;
    cfg.restarts = 8;
    const EstimationResult res = estimate(cs, cfg);
    const double err = (res.G_hat - g).cwiseAbs().maxCoeff();
    worst = std::max(worst, err);
    const double scale = cs.C.squaredNorm() + cs.Kc.squaredNorm();
    if (err < 1e-4)
      ++recovered;
    else if (res.final_loss < 1e-10 * scale)
      ++alternative;
  }
  append(&out, recovered == 20,
         "recovered " + std::to_string(recovered) + "/20 (worst max err " +
             num(worst) + ", <1e-4)");
  append(&out, true,
         "alternative optima flagged: " + std::to_string(alternative));
  return out;
}

// ---------------------------------------------------------------- 5
Outcome gradient_check() {
  Outcome out;
  std::mt19937_64 gen(555);
  std::uniform_real_distribution<double> u(-1.0, 1.5);
  double worst = 0.0;
  for (int rep = 0; rep < 20; ++rep) {
    const int d = rep % 2 == 0 ? 2 : 3;
    CumulantSet cs;
    cs.Lambda = Vector(d);
    for (int i = 0; i < d; ++i) cs.Lambda[i] = 0.5 + std::abs(u(gen));
    cs.C = Matrix(d, d);
    cs.Kc = Matrix(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        cs.C(i, j) = u(gen);
        cs.Kc(i, j) = 3.0 * u(gen);
      }
    cs.C = ((cs.C + cs.C.transpose()) / 2.0).eval();
    Matrix R(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) R(i, j) = u(gen);
    const double kap = 0.2 + 0.6 * std::abs(u(gen));
    const Matrix grad = loss_gradient(R, cs, kap);
    const Matrix fd = oracles::finite_difference_gradient(
        [&](const Matrix& X) { return loss(X, cs, kap); }, R, 1e-6);
    worst = std::max(worst, (grad - fd).cwiseAbs().maxCoeff() /
                                std::max(1.0, fd.cwiseAbs().maxCoeff()));
  }
  append(&out, worst < 1e-5,
         "worst relative gradient error " + num(worst) + " (<1e-5)");
  return out;
}

// ---------------------------------------------------------------- 6
Outcome sliding_window_oracle() {
  Outcome out;
  std::mt19937_64 gen(808);
  double worst = 0.0;
  for (int rep = 0; rep < 50; ++rep) {
    const int d = 1 + rep % 3;
    const double T = 40.0 + (rep % 7) * 20.0;
    std::uniform_real_distribution<double> ut(0.0, T);
    std::uniform_int_distribution<int> count(5, 2000 / d);
    EventStream s;
    s.duration = T;
    s.events.resize(static_cast<std::size_t>(d));
    for (auto& z : s.events) {
      const int n = count(gen);
      for (int k = 0; k < n; ++k) z.push_back(ut(gen));
      std::sort(z.begin(), z.end());
      z.erase(std::unique(z.begin(), z.end()), z.end());
    }
    CumulantConfig cfg;
    cfg.H = 0.5 + (rep % 9) * 1.1;
    cfg.boundary = rep % 2 == 0 ? BoundaryPolicy::RestrictAnchors
                                : BoundaryPolicy::ClipCounts;
    const Matrix fast = estimate_skewness(s, cfg);
    const Matrix slow = oracles::naive_skewness(s, cfg);
    const double scale = std::max(1.0, slow.cwiseAbs().maxCoeff());
    worst = std::max(worst, (fast - slow).cwiseAbs().maxCoeff() / scale);
  }
  append(&out, worst < 1e-9,
         "worst sliding-vs-naive relative gap " + num(worst) + " (<1e-9)");
  return out;
}

// ---------------------------------------------------------------- 7
Outcome algebraic_identities() {
  Outcome out;
  double worst_sym = 0.0, worst_round = 0.0, worst_partition = 0.0;
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const int d = 2 + static_cast<int>(seed % 3);
    Matrix g;
    Vector mu = Vector::Constant(d, 0.8);
    Vector lambda;
    for (std::uint64_t salt = 0;; ++salt) {
      g = oracles::random_g(d, 0.2 + 0.1 * static_cast<double>(seed),
                            mix_seed(seed, salt), true);
      lambda = matrices_from_g(g).R * mu;
      if (lambda.minCoeff() > 0.05) break;
    }
    const auto K = third_cumulant_tensor(g, mu);
    double scale = 1e-12;
    for (int i = 0; i < d; ++i)
      scale = std::max(scale, K[static_cast<std::size_t>(i)].cwiseAbs().maxCoeff());
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          const double v = K[static_cast<std::size_t>(i)](j, k);
          for (double w : {K[static_cast<std::size_t>(i)](k, j),
                           K[static_cast<std::size_t>(j)](i, k),
                           K[static_cast<std::size_t>(j)](k, i),
                           K[static_cast<std::size_t>(k)](i, j),
                           K[static_cast<std::size_t>(k)](j, i)})
            worst_sym = std::max(worst_sym, std::abs(v - w) / scale);
        }

    const BranchingMatrices bm = matrices_from_g(g);
    worst_round = std::max(
        worst_round,
        ((Matrix::Identity(d, d) - g) * bm.R - Matrix::Identity(d, d))
            .cwiseAbs()
            .maxCoeff());
    worst_round = std::max(
        worst_round,
        (Matrix::Identity(d, d) - bm.R.fullPivLu().inverse() - g)
            .cwiseAbs()
            .maxCoeff());

    EstimationResult res;
    res.R_hat = bm.R;
    res.G_hat = g;
    res.Psi_hat = bm.Psi;
    res.mu_hat = mu;
    res.Lambda_hat = lambda;
    std::vector<std::vector<int>> partition;
    for (int i = 0; i < d; ++i) partition.push_back({i});
    std::vector<int> target{0, d - 1};
    double total = 0.0;
    for (const auto& p : partition) total += ancestor_fraction(res, p, target);
    const double lam_t = lambda[0] + lambda[d - 1];
    const double mu_t = mu[0] + mu[d - 1];
    worst_partition =
        std::max(worst_partition, std::abs(total - (1.0 - mu_t / lam_t)));
  }
  append(&out, worst_sym < 1e-10,
         "tensor symmetry " + num(worst_sym) + " (<1e-10 rel)");
  append(&out, worst_round < 1e-10,
         "R/G round trip " + num(worst_round) + " (<1e-10)");
  append(&out, worst_partition < 1e-10,
         "ancestor partition " + num(worst_partition) + " (<1e-10)");
  return out;
}

// ---------------------------------------------------------------- 8
Outcome complexity_contract() {
  Outcome out;
  const std::size_t n = 20000;  // events per component, fixed across d
  auto make_stream = [](int d, std::size_t events, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    const double T = 20000.0;
    std::uniform_real_distribution<double> u(0.0, T);
    EventStream s;
    s.duration = T;
    s.events.resize(static_cast<std::size_t>(d));
    for (auto& z : s.events) {
      z.reserve(events);
      for (std::size_t k = 0; k < events; ++k) z.push_back(u(gen));
      std::sort(z.begin(), z.end());
      z.erase(std::unique(z.begin(), z.end()), z.end());
    }
    return s;
  };
  CumulantConfig cfg;
  cfg.H = 5.0;
  std::vector<double> times;
  for (int d : {4, 8, 16}) {
    const EventStream s = make_stream(d, n, 42 + static_cast<std::uint64_t>(d));
    std::vector<double> runs;
    for (int rep = 0; rep < 3; ++rep) {
      const auto t0 = Clock::now();
      const Matrix C = estimate_covariance(s, cfg);
      const Matrix K = estimate_skewness(s, cfg);
      runs.push_back(seconds_since(t0) + 1e-12 * (C(0, 0) + K(0, 0)));
    }
    std::sort(runs.begin(), runs.end());
    times.push_back(runs[1]);
  }
  const double r1 = times[1] / times[0];
  const double r2 = times[2] / times[1];
  append(&out, r1 <= 4.6,
         "time(d=8)/time(d=4)=" + num(r1) + " (<=4.6)");
  append(&out, r2 <= 4.6,
         "time(d=16)/time(d=8)=" + num(r2) + " (<=4.6)");
  append(&out, true,
         "times " + num(times[0]) + "/" + num(times[1]) + "/" + num(times[2]) +
             " s at d=4/8/16");
  return out;
}

// ---------------------------------------------------------------- 9
Outcome slot_stability() {
  const auto start = Clock::now();
  Outcome out;
  HawkesModel base(2);
  base.mu << 1.0, 0.8;
  base.kernel(0, 0) = KernelSpec{KernelFamily::Exponential, 0.35, 1.0, 0.0};
  base.kernel(1, 0) = KernelSpec{KernelFamily::Exponential, 0.2, 1.4, 0.0};
  base.kernel(1, 1) = KernelSpec{KernelFamily::Exponential, 0.3, 0.9, 0.0};
  HawkesModel scaled = base;
  scaled.mu *= 2.0;

  const int realizations = 48;
  const double slot_T = 20000.0;
  CumulantConfig ccfg;
  ccfg.H = 10.0;
  NphcConfig cfg;

  auto run_pair = [&](const HawkesModel& m0, const HawkesModel& m1,
                      std::uint64_t salt0, std::uint64_t salt1) {
    std::vector<std::vector<EventStream>> slots(2);
    for (int k = 0; k < realizations; ++k) {
      SimConfig sc;
      sc.horizon = slot_T;
      sc.seed = mix_seed(salt0, static_cast<std::uint64_t>(k));
      slots[0].push_back(simulate(m0, sc).stream);
      sc.seed = mix_seed(salt1, static_cast<std::uint64_t>(k));
      slots[1].push_back(simulate(m1, sc).stream);
    }
    return slotwise_estimate(slots, cfg, ccfg);
  };

  // flat-mu runs calibrate the seed spread of the per-slot drift
  double flat_spread = 0.0;
  for (std::uint64_t r = 0; r < 3; ++r) {
    const auto flat = run_pair(base, base, 7000 + 13 * r, 7500 + 17 * r);
    const double drift =
        (flat[0].result->G_hat - flat[1].result->G_hat).cwiseAbs().maxCoeff();
    flat_spread = std::max(flat_spread, drift);
  }

  const auto varying = run_pair(base, scaled, 9000, 9500);
  const double drift =
      (varying[0].result->G_hat - varying[1].result->G_hat)
          .cwiseAbs()
          .maxCoeff();
  double ratio_dev = 0.0;
  for (int i = 0; i < 2; ++i)
    ratio_dev = std::max(
        ratio_dev,
        std::abs(varying[1].result->mu_hat[i] / varying[0].result->mu_hat[i] -
                 2.0) /
            2.0);
  append(&out, drift <= 2.0 * flat_spread,
         "varying-mu drift " + num(drift) + " <= 2 x flat spread " +
             num(flat_spread));
  append(&out, ratio_dev < 0.20,
         "mu profile tracked within " + num(100.0 * ratio_dev) + "% (<20%)");
  const double elapsed = seconds_since(start);
  append(&out, true, num(elapsed) + " s");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "Poisson null", poisson_null},
      {2, "1d exponential", exponential_1d},
      {3, "Rect10/PLaw10 shape robustness", block10_shapes},
      {4, "exact-moment recovery", exact_moment_recovery},
      {5, "analytic gradient vs finite differences", gradient_check},
      {6, "sliding-window vs naive double sum", sliding_window_oracle},
      {7, "algebraic identities", algebraic_identities},
      {8, "cumulant complexity contract", complexity_contract},
      {9, "slot stability", slot_stability},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    if (only != 0 && only != c.id) continue;
    const Outcome out = c.run();
    std::printf("[%s] criterion %d: %s — %s\n", out.pass ? "PASS" : "FAIL",
                c.id, c.name, out.detail.c_str());
    std::fflush(stdout);
    if (!out.pass) ++failures;
  }
  return failures;
}
