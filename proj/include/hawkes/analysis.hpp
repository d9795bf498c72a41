#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hawkes/cumulants.hpp"
#include "hawkes/estimator.hpp"
#include "hawkes/types.hpp"

namespace hawkes {

// A declared mirror symmetry: an involution given by index swaps, identity
// elsewhere.
struct SwapSymmetry {
  std::string name;
  std::vector<std::pair<int, int>> swaps;
};

// Component labels plus named index groups (e.g. "aggressive" = all trade
// components of the 12-type order-book taxonomy).
struct EventTaxonomy {
  std::vector<std::string> labels;
  std::map<std::string, std::vector<int>> groups;

  int dim() const { return static_cast<int>(labels.size()); }
  void validate() const;

  // T+/T-/L+/L-/C+/C-/Ta/Tb/La/Lb/Ca/Cb with "aggressive" (T components),
  // "passive" (L and C components) and "price_moving" groups.
  static EventTaxonomy eurex12();
  // The six up/down and bid/ask mirror pairs of the 12-type taxonomy.
  static std::vector<SwapSymmetry> eurex12_mirrors();
};

// Entrywise mu_hat / Lambda_hat. Throws DegenerateLambda on a zero entry.
Vector exogenous_fraction(const Vector& mu_hat, const Vector& lambda_hat);

// Fraction of target-group events whose oldest ancestor is an exogenous
// event of a source-group type:
//   sum_{i in target, j in source} Psi^{ij} mu^j / sum_{i in target} Lambda^i
double ancestor_fraction(const EstimationResult& result,
                         std::span<const int> source_group,
                         std::span<const int> target_group);

// Restriction of a stream to [t0, t1), shifted to slot-local time.
EventStream slice_stream(const EventStream& stream, double t0, double t1);

// Equal-width slot decomposition of each realization; slots[s] collects the
// s-th slice of every input stream.
std::vector<std::vector<EventStream>> split_into_slots(
    std::span<const EventStream> streams, int slots);

struct SlotOutcome {
  std::optional<EstimationResult> result;
  std::string error;  // set when this slot failed
};

// Per-slot aggregate_cumulants + estimate. A failing slot yields an error
// entry; the remaining slots are still returned.
std::vector<SlotOutcome> slotwise_estimate(
    const std::vector<std::vector<EventStream>>& slots, const NphcConfig& cfg,
    const CumulantConfig& ccfg);

struct SymmetryEntry {
  std::string name;
  double mean_abs_difference = 0.0;
  int compared_entries = 0;
};

// Mean |G^{ij} - G^{sigma(i)sigma(j)}| over entries moved by sigma, each
// unordered entry pair counted once. A rough estimation-error proxy.
std::vector<SymmetryEntry> symmetry_report(
    const EstimationResult& result, std::span<const SwapSymmetry> symmetries);

}  // namespace hawkes
