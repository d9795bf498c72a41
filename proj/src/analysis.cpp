#include "hawkes/analysis.hpp"

#include <algorithm>
#include <future>
#include <set>

namespace hawkes {

void EventTaxonomy::validate() const {
  std::set<std::string> seen(labels.begin(), labels.end());
  if (seen.size() != labels.size())
    throw Error("taxonomy labels must be distinct");
  for (const auto& [name, idx] : groups)
    for (int i : idx)
      if (i < 0 || i >= dim())
        throw Error("group '" + name + "' has an out-of-range index");
}

EventTaxonomy EventTaxonomy::eurex12() {
  EventTaxonomy t;
  t.labels = {"T+", "T-", "L+", "L-", "C+", "C-",
              "Ta", "Tb", "La", "Lb", "Ca", "Cb"};
  t.groups["aggressive"] = {0, 1, 6, 7};
  t.groups["passive"] = {2, 3, 4, 5, 8, 9, 10, 11};
  t.groups["price_moving"] = {0, 1, 2, 3, 4, 5};
  return t;
}

std::vector<SwapSymmetry> EventTaxonomy::eurex12_mirrors() {
  return {
      {"up_down", {{0, 1}, {2, 3}, {4, 5}}},
      {"bid_ask", {{6, 7}, {8, 9}, {10, 11}}},
  };
}

Vector exogenous_fraction(const Vector& mu_hat, const Vector& lambda_hat) {
  if (mu_hat.size() != lambda_hat.size())
    throw MismatchedShapes("mu and Lambda differ in size");
  for (int i = 0; i < lambda_hat.size(); ++i)
    if (!(lambda_hat[i] > 0.0))
      throw DegenerateLambda("Lambda must be positive entrywise");
  return mu_hat.cwiseQuotient(lambda_hat);
}

double ancestor_fraction(const EstimationResult& result,
                         std::span<const int> source_group,
                         std::span<const int> target_group) {
  const int d = static_cast<int>(result.Lambda_hat.size());
  auto check = [d](std::span<const int> g) {
    if (g.empty()) throw Error("group must be non-empty");
    for (int i : g)
      if (i < 0 || i >= d) throw Error("group index out of range");
  };
  check(source_group);
  check(target_group);
  double denom = 0.0;
  for (int i : target_group) {
    if (!(result.Lambda_hat[i] > 0.0))
      throw DegenerateLambda("Lambda must be positive on target components");
    denom += result.Lambda_hat[i];
  }
  double num = 0.0;
  for (int i : target_group)
    for (int j : source_group)
      num += result.Psi_hat(i, j) * result.mu_hat[j];
  return num / denom;
}

EventStream slice_stream(const EventStream& stream, double t0, double t1) {
  if (!(t0 >= 0.0 && t1 > t0 && t1 <= stream.duration))
    throw Error("slot bounds must satisfy 0 <= t0 < t1 <= T");
  EventStream out;
  out.duration = t1 - t0;
  out.events.resize(stream.events.size());
  for (std::size_t i = 0; i < stream.events.size(); ++i) {
    const auto& z = stream.events[i];
    auto lo = std::lower_bound(z.begin(), z.end(), t0);
    auto hi = std::lower_bound(z.begin(), z.end(), t1);
    out.events[i].reserve(static_cast<std::size_t>(hi - lo));
    for (auto it = lo; it != hi; ++it) out.events[i].push_back(*it - t0);
  }
  return out;
}

std::vector<std::vector<EventStream>> split_into_slots(
    std::span<const EventStream> streams, int slots) {
  if (slots < 1) throw Error("slot count must be >= 1");
  std::vector<std::vector<EventStream>> out(static_cast<std::size_t>(slots));
  for (const auto& s : streams) {
    const double width = s.duration / slots;
    for (int k = 0; k < slots; ++k)
      out[static_cast<std::size_t>(k)].push_back(
          slice_stream(s, k * width, (k + 1) * width));
  }
  return out;
}

std::vector<SlotOutcome> slotwise_estimate(
    const std::vector<std::vector<EventStream>>& slots, const NphcConfig& cfg,
    const CumulantConfig& ccfg) {
  auto run_slot = [&](const std::vector<EventStream>& streams) {
    SlotOutcome out;
    try {
      if (streams.empty()) throw Error("slot holds no realizations");
      std::vector<CumulantSet> parts;
      parts.reserve(streams.size());
      for (const auto& s : streams)
        parts.push_back(estimate_cumulants(s, ccfg));
      const CumulantSet agg = aggregate_cumulants(parts);
      out.result = estimate(agg, cfg);
    } catch (const std::exception& e) {
      out.result.reset();
      out.error = e.what();
    }
    return out;
  };
  std::vector<std::future<SlotOutcome>> futs;
  futs.reserve(slots.size());
  for (const auto& slot : slots)
    futs.push_back(
        std::async(std::launch::async, [&run_slot, &slot] { return run_slot(slot); }));
  std::vector<SlotOutcome> out;
  out.reserve(slots.size());
  for (auto& f : futs) out.push_back(f.get());
  return out;
}

std::vector<SymmetryEntry> symmetry_report(
    const EstimationResult& result, std::span<const SwapSymmetry> symmetries) {
  const int d = static_cast<int>(result.G_hat.rows());
  std::vector<SymmetryEntry> report;
  report.reserve(symmetries.size());
  for (const auto& sym : symmetries) {
    std::vector<int> sigma(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) sigma[static_cast<std::size_t>(i)] = i;
    std::set<int> used;
    for (const auto& [a, b] : sym.swaps) {
      if (a < 0 || a >= d || b < 0 || b >= d)
        throw Error("swap index out of range in symmetry '" + sym.name + "'");
      if (!used.insert(a).second || !used.insert(b).second)
        throw Error("index repeated in symmetry '" + sym.name + "'");
      sigma[static_cast<std::size_t>(a)] = b;
      sigma[static_cast<std::size_t>(b)] = a;
    }
    SymmetryEntry entry;
    entry.name = sym.name;
    double sum = 0.0;
    int count = 0;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const int si = sigma[static_cast<std::size_t>(i)];
        const int sj = sigma[static_cast<std::size_t>(j)];
        if (si == i && sj == j) continue;
        if (std::make_pair(i, j) < std::make_pair(si, sj)) {
          sum += std::abs(result.G_hat(i, j) - result.G_hat(si, sj));
          ++count;
        }
      }
    entry.compared_entries = count;
    entry.mean_abs_difference = count > 0 ? sum / count : 0.0;
    report.push_back(std::move(entry));
  }
  return report;
}

}  // namespace hawkes
