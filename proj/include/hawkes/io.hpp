#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hawkes/analysis.hpp"
#include "hawkes/estimator.hpp"
#include "hawkes/types.hpp"

namespace hawkes {

inline constexpr const char* kToolVersion = "0.1.0";

enum class StreamFormat { CsvLong, PerComponentColumns };

struct ReadOptions {
  StreamFormat format = StreamFormat::CsvLong;
  std::optional<double> T_override;  // else max timestamp rounded up
  std::optional<int> dim_override;   // else max component id + 1
};

struct ReadReport {
  std::size_t repaired_duplicates = 0;
  long lines = 0;
};

// Parses one stream file into per-component sorted, strictly increasing
// sequences. Within-component duplicate timestamps are nudged up by the
// smallest representable increment (count reported). Throws ParseError
// (with line number), Error on an empty file, NonmonotonicAfterRepair if
// the nudge cannot restore strict ordering.
EventStream read_stream(const std::string& path, const ReadOptions& opts,
                        ReadReport* report = nullptr);

// One stream per file; all files must agree on the dimension.
std::vector<EventStream> read_streams(std::span<const std::string> paths,
                                      const ReadOptions& opts,
                                      ReadReport* report = nullptr);

// Timestamps are written in shortest round-trip decimal form, so
// write(read(f)) preserves every value exactly.
void write_stream(const EventStream& stream, const std::string& path,
                  StreamFormat format = StreamFormat::CsvLong);

// Flat key = value model description (units in key names).
struct ModelConfig {
  HawkesModel model;
  double horizon_seconds = 0.0;
  std::vector<std::string> labels;  // optional, size d when present
};

ModelConfig read_model_config(const std::string& path);
void write_model_config(const ModelConfig& cfg, const std::string& path);

// Structured cumulant document (JSON).
void write_cumulant_file(const CumulantSet& cumulants,
                         std::span<const std::string> labels,
                         const std::map<std::string, std::string>& config_echo,
                         const std::string& path);
CumulantSet read_cumulant_file(const std::string& path,
                               std::vector<std::string>* labels = nullptr);

// Full estimation result document (JSON). Write-read-write is
// byte-identical: fixed key order, shortest round-trip floats.
struct ResultDocument {
  int dim = 0;
  std::vector<std::string> labels;
  CumulantSet cumulants;
  EstimationResult result;
  std::map<std::string, std::string> config_echo;
  std::optional<double> mae_vs_truth;
  std::string tool_version = kToolVersion;
};

void write_result_file(const ResultDocument& doc, const std::string& path);
ResultDocument read_result_file(const std::string& path);

// Tab-separated matrix with row/column labels, for external plotting.
void write_matrix_tsv(const Matrix& m, std::span<const std::string> labels,
                      const std::string& path);

// Analysis report: exogenous fractions, group-to-group ancestor fractions,
// symmetry entries. Group definitions are serialized next to the numbers.
struct AnalysisReport {
  std::vector<std::string> labels;
  std::map<std::string, std::vector<int>> groups;
  Vector exogenous;
  std::vector<std::string> group_names;          // row/col order
  Matrix ancestor_fractions;                     // target x source
  std::vector<SymmetryEntry> symmetries;
};

void write_analysis_report(const AnalysisReport& report,
                           const std::string& json_path,
                           const std::string& text_path);

// Shortest decimal form that parses back to exactly the same double.
std::string format_double(double x);

}  // namespace hawkes
