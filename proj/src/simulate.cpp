#include "hawkes/simulate.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <future>
#include <limits>
#include <random>

#include "hawkes/model.hpp"

namespace hawkes {

void SimConfig::validate() const {
  if (!(horizon > 0.0)) throw Error("simulation horizon must be positive");
  if (!(upper_bound_margin >= 1.0))
    throw Error("upper_bound_margin must be >= 1");
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// mt19937_64 seeded through splitmix64 expansion; draws are hand-rolled so
// results do not depend on the standard library's distribution details.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t s[8];
    for (int i = 0; i < 8; ++i) s[i] = mix_seed(seed, static_cast<std::uint64_t>(i) + 0x1234);
    std::seed_seq seq(std::begin(s), std::end(s));
    gen_.seed(seq);
  }
  double uniform() {  // [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }
  double exponential(double rate) { return -std::log1p(-uniform()) / rate; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace

double kernel_value(const KernelSpec& spec, double t) {
  if (t < 0.0) return 0.0;
  switch (spec.family) {
    case KernelFamily::Exponential:
      return spec.alpha * spec.beta * std::exp(-spec.beta * t);
    case KernelFamily::Rectangular: {
      const double u = t - spec.gamma;
      return (u >= 0.0 && u <= 1.0 / spec.beta) ? spec.alpha * spec.beta : 0.0;
    }
    case KernelFamily::PowerLaw:
      return spec.alpha * spec.beta * spec.gamma *
             std::pow(1.0 + spec.beta * t, -(1.0 + spec.gamma));
  }
  return 0.0;
}

double kernel_tail_integral(const KernelSpec& spec, double t) {
  if (t <= 0.0) return spec.alpha;
  switch (spec.family) {
    case KernelFamily::Exponential:
      return spec.alpha * std::exp(-spec.beta * t);
    case KernelFamily::Rectangular: {
      const double end = spec.gamma + 1.0 / spec.beta;
      if (t <= spec.gamma) return spec.alpha;
      if (t >= end) return 0.0;
      return spec.alpha * spec.beta * (end - t);
    }
    case KernelFamily::PowerLaw:
      return spec.alpha * std::pow(1.0 + spec.beta * t, -spec.gamma);
  }
  return 0.0;
}

double kernel_truncation_horizon(const KernelSpec& spec,
                                 double tail_fraction) {
  if (spec.alpha == 0.0) return 0.0;
  switch (spec.family) {
    case KernelFamily::Exponential:
      return std::log(1.0 / tail_fraction) / spec.beta;
    case KernelFamily::Rectangular:
      return spec.gamma + 1.0 / spec.beta;
    case KernelFamily::PowerLaw:
      return (std::pow(tail_fraction, -1.0 / spec.gamma) - 1.0) / spec.beta;
  }
  return 0.0;
}

Vector conditional_intensity(const HawkesModel& model,
                             const EventStream& history, double t) {
  const int d = model.dim();
  Vector lambda = model.mu;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const auto& k = model.kernel(i, j);
      if (!k || k->alpha == 0.0) continue;
      const auto& z = history.events[static_cast<std::size_t>(j)];
      const double horizon = kernel_truncation_horizon(*k);
      // events in [t - horizon, t)
      auto lo = std::lower_bound(z.begin(), z.end(), t - horizon);
      auto hi = std::lower_bound(z.begin(), z.end(), t);
      if (k->family == KernelFamily::Rectangular) {
        // constant on its support; count events with t - s in
        // [gamma, gamma + 1/beta]
        auto a = std::lower_bound(z.begin(), hi, t - k->gamma - 1.0 / k->beta);
        auto b = std::upper_bound(z.begin(), hi, t - k->gamma);
        lambda[i] += k->alpha * k->beta * static_cast<double>(b - a);
      } else {
        for (auto it = lo; it != hi; ++it)
          lambda[i] += kernel_value(*k, t - *it);
      }
    }
    lambda[i] = std::max(0.0, lambda[i]);
  }
  return lambda;
}

namespace {

struct PairState {
  KernelSpec k;
  int target = 0, source = 0;
  double exp_sum = 0.0;   // sum of alpha*beta*exp(-beta (t - s)), at exp_t
  double exp_t = 0.0;
  std::size_t lo = 0;     // moving window start (Rectangular / PowerLaw)
  std::size_t active_hi = 0;  // Rectangular: first event with s > t - gamma
  double trunc = 0.0;
};

class Thinning {
 public:
  Thinning(const HawkesModel& model, const SimConfig& cfg)
      : model_(model), cfg_(cfg), d_(model.dim()), rng_(cfg.seed) {
    history_.resize(static_cast<std::size_t>(d_));
    for (int i = 0; i < d_; ++i)
      for (int j = 0; j < d_; ++j) {
        const auto& k = model.kernel(i, j);
        if (!k || k->alpha == 0.0) continue;
        PairState ps;
        ps.k = *k;
        ps.target = i;
        ps.source = j;
        ps.trunc = kernel_truncation_horizon(*k);
        pairs_.push_back(ps);
        cheap_bound_ = cheap_bound_ && k->family != KernelFamily::PowerLaw;
      }
  }

  SimResult run() {
    SimResult res;
    res.stream.duration = cfg_.horizon;
    res.stream.events.resize(static_cast<std::size_t>(d_));
    const double T = cfg_.horizon;
    double t = 0.0;
    Vector lambda(d_);
    bool need_bound = true;
    double bound = 0.0;
    while (true) {
      if (need_bound) {
        bound = majorant(t);
        need_bound = false;
      }
      if (!(bound > 0.0)) {
        double onset = next_rect_onset(t);
        if (!(onset < T)) break;
        t = onset;
        need_bound = true;
        continue;
      }
      t += rng_.exponential(bound);
      if (t > T) break;
      ++res.candidates;
      const double total = intensities(t, lambda);
      const double ratio = total / bound;
      res.max_intensity_ratio = std::max(res.max_intensity_ratio, ratio);
      assert(ratio <= 1.0 + 1e-9);
      const double v = rng_.uniform() * bound;
      if (v <= total) {
        int comp = d_ - 1;
        double acc = 0.0;
        for (int i = 0; i < d_; ++i) {
          acc += lambda[i];
          if (v <= acc) {
            comp = i;
            break;
          }
        }
        record_event(comp, t);
        ++res.accepted;
        need_bound = true;
        if (cfg_.max_events && total_events_ >= *cfg_.max_events) {
          res.truncated = true;
          break;
        }
      } else if (cheap_bound_) {
        need_bound = true;
      }
    }
    for (int i = 0; i < d_; ++i)
      res.stream.events[static_cast<std::size_t>(i)] =
          std::move(history_[static_cast<std::size_t>(i)]);
    return res;
  }

 private:
  // Upper bound on the total intensity for all times > t until the next
  // accepted event: positive exponential states decay, power-law
  // contributions decrease, and every rectangular plateau that is active
  // or still pending is counted in full.
  double majorant(double t) {
    Vector b = model_.mu;
    for (auto& ps : pairs_) {
      const auto& z = history_[static_cast<std::size_t>(ps.source)];
      switch (ps.k.family) {
        case KernelFamily::Exponential: {
          const double v = decayed_exp(ps, t);
          if (v > 0.0) b[ps.target] += v;
          break;
        }
        case KernelFamily::Rectangular: {
          if (ps.k.alpha > 0.0) {
            advance_lo(ps, z, t);
            b[ps.target] += ps.k.alpha * ps.k.beta *
                            static_cast<double>(z.size() - ps.lo);
          }
          break;
        }
        case KernelFamily::PowerLaw: {
          if (ps.k.alpha > 0.0) {
            advance_lo(ps, z, t);
            double s = 0.0;
            for (std::size_t m = ps.lo; m < z.size(); ++m)
              s += kernel_value(ps.k, t - z[m]);
            b[ps.target] += s;
          }
          break;
        }
      }
    }
    double total = 0.0;
    for (int i = 0; i < d_; ++i) total += std::max(0.0, b[i]);
    return total * cfg_.upper_bound_margin;
  }

  double intensities(double t, Vector& lambda) {
    lambda = model_.mu;
    for (auto& ps : pairs_) {
      const auto& z = history_[static_cast<std::size_t>(ps.source)];
      switch (ps.k.family) {
        case KernelFamily::Exponential:
          lambda[ps.target] += decayed_exp(ps, t);
          break;
        case KernelFamily::Rectangular: {
          advance_lo(ps, z, t);
          while (ps.active_hi < z.size() && z[ps.active_hi] <= t - ps.k.gamma)
            ++ps.active_hi;
          const std::size_t active =
              ps.active_hi > ps.lo ? ps.active_hi - ps.lo : 0;
          lambda[ps.target] +=
              ps.k.alpha * ps.k.beta * static_cast<double>(active);
          break;
        }
        case KernelFamily::PowerLaw: {
          advance_lo(ps, z, t);
          double s = 0.0;
          for (std::size_t m = ps.lo; m < z.size(); ++m)
            s += kernel_value(ps.k, t - z[m]);
          lambda[ps.target] += s;
          break;
        }
      }
    }
    double total = 0.0;
    for (int i = 0; i < d_; ++i) {
      lambda[i] = std::max(0.0, lambda[i]);
      total += lambda[i];
    }
    return total;
  }

  double decayed_exp(PairState& ps, double t) {
    if (t > ps.exp_t) {
      ps.exp_sum *= std::exp(-ps.k.beta * (t - ps.exp_t));
      ps.exp_t = t;
    }
    return ps.exp_sum;
  }

  // First index whose event can still contribute at or after time t.
  void advance_lo(PairState& ps, const std::vector<double>& z, double t) {
    while (ps.lo < z.size() && z[ps.lo] < t - ps.trunc) ++ps.lo;
    if (ps.active_hi < ps.lo) ps.active_hi = ps.lo;
  }

  // Earliest future start of a pending rectangular plateau.
  double next_rect_onset(double t) {
    double onset = std::numeric_limits<double>::infinity();
    for (auto& ps : pairs_) {
      if (ps.k.family != KernelFamily::Rectangular || ps.k.alpha <= 0.0)
        continue;
      const auto& z = history_[static_cast<std::size_t>(ps.source)];
      auto it = std::upper_bound(z.begin(), z.end(), t - ps.k.gamma);
      if (it != z.end()) onset = std::min(onset, *it + ps.k.gamma);
    }
    return onset;
  }

  void record_event(int comp, double t) {
    history_[static_cast<std::size_t>(comp)].push_back(t);
    ++total_events_;
    for (auto& ps : pairs_) {
      if (ps.source != comp || ps.k.family != KernelFamily::Exponential)
        continue;
      decayed_exp(ps, t);
      ps.exp_sum += ps.k.alpha * ps.k.beta;
    }
  }

  const HawkesModel& model_;
  const SimConfig& cfg_;
  int d_;
  Rng rng_;
  std::vector<std::vector<double>> history_;
  std::vector<PairState> pairs_;
  std::size_t total_events_ = 0;
  bool cheap_bound_ = true;
};

}  // namespace

SimResult simulate(const HawkesModel& model, const SimConfig& cfg) {
  model.validate();
  cfg.validate();
  if (spectral_radius(g_from_model(model)) >= 1.0)
    throw NonStationary("spectral radius of G is >= 1");
  return Thinning(model, cfg).run();
}

std::vector<SimResult> simulate_batch(const HawkesModel& model,
                                      const SimConfig& cfg,
                                      std::size_t realizations) {
  std::vector<std::future<SimResult>> futs;
  futs.reserve(realizations);
  for (std::size_t k = 0; k < realizations; ++k) {
    SimConfig c = cfg;
    c.seed = mix_seed(cfg.seed, k);
    futs.push_back(std::async(std::launch::async,
                              [&model, c] { return simulate(model, c); }));
  }
  std::vector<SimResult> out;
  out.reserve(realizations);
  for (auto& f : futs) out.push_back(f.get());
  return out;
}

}  // namespace hawkes
