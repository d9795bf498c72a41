#include "hawkes/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hawkes {

using ordered_json = nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[48];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' ||
                        s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' ||
                        s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double* out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

bool parse_int(std::string_view s, long* out) {
  s = trim(s);
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), *out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    const std::size_t next = s.find(sep, pos);
    if (next == std::string_view::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t')) ++pos;
    std::size_t end = pos;
    while (end < s.size() && s[end] != ' ' && s[end] != '\t') ++end;
    if (end > pos) out.push_back(s.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

// Sorts each component and restores strict ordering by nudging duplicates
// up one ulp at a time. Returns the largest repaired timestamp.
double finalize_components(std::vector<std::vector<double>>& comps,
                           ReadReport* report) {
  double max_t = 0.0;
  for (auto& z : comps) {
    std::sort(z.begin(), z.end());
    for (std::size_t k = 1; k < z.size(); ++k) {
      if (z[k] <= z[k - 1]) {
        z[k] = std::nextafter(z[k - 1],
                              std::numeric_limits<double>::infinity());
        if (report) ++report->repaired_duplicates;
      }
    }
    for (std::size_t k = 1; k < z.size(); ++k)
      if (z[k] <= z[k - 1])
        throw NonmonotonicAfterRepair(
            "duplicate repair failed to restore strict ordering");
    if (!z.empty()) max_t = std::max(max_t, z.back());
  }
  return max_t;
}

}  // namespace

EventStream read_stream(const std::string& path, const ReadOptions& opts,
                        ReadReport* report) {
  std::ifstream in = open_input(path);
  std::vector<std::vector<double>> comps;
  if (opts.dim_override) comps.resize(static_cast<std::size_t>(*opts.dim_override));

  bool any = false;
  std::string line;
  long line_no = 0;
  std::vector<std::string> header_labels;

  if (opts.format == StreamFormat::CsvLong) {
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view sv = trim(line);
      if (sv.empty() || sv.front() == '#') continue;
      const auto cells = split(sv, ',');
      if (cells.size() != 2)
        throw ParseError("expected 'component_id,timestamp_seconds'", line_no);
      long comp;
      double t;
      if (!parse_int(cells[0], &comp) || comp < 0)
        throw ParseError("bad component id '" + std::string(cells[0]) + "'",
                         line_no);
      if (!parse_double(cells[1], &t) || !std::isfinite(t) || t < 0.0)
        throw ParseError("bad timestamp '" + std::string(cells[1]) + "'",
                         line_no);
      if (opts.dim_override && comp >= *opts.dim_override)
        throw ParseError("component id exceeds --dim", line_no);
      if (comp >= static_cast<long>(comps.size()))
        comps.resize(static_cast<std::size_t>(comp) + 1);
      comps[static_cast<std::size_t>(comp)].push_back(t);

      any = true;
    }
  } else {
    bool saw_header = false;
    while (std::getline(in, line)) {
      ++line_no;
      std::string_view sv = trim(line);
      if (sv.empty() || sv.front() == '#') continue;
      const auto cells = split(sv, ',');
      double probe;
      bool numeric_row = false;
      for (const auto& c : cells)
        if (!trim(c).empty()) {
          numeric_row = parse_double(c, &probe);
          break;
        }
      if (!numeric_row && !saw_header && !any) {
        for (const auto& c : cells) header_labels.emplace_back(trim(c));
        saw_header = true;
        continue;
      }
      if (cells.size() > comps.size()) {
        if (opts.dim_override &&
            cells.size() > static_cast<std::size_t>(*opts.dim_override))
          throw ParseError("more columns than --dim", line_no);
        comps.resize(cells.size());
      }
      for (std::size_t c = 0; c < cells.size(); ++c) {
        const auto cell = trim(cells[c]);
        if (cell.empty()) continue;
        double t;
        if (!parse_double(cell, &t) || !std::isfinite(t) || t < 0.0)
          throw ParseError("bad timestamp '" + std::string(cell) + "'",
                           line_no);
        comps[c].push_back(t);

        any = true;
      }
    }
  }
  if (report) report->lines = line_no;
  if (!any) throw Error("'" + path + "' holds no events");

  double raw_max = 0.0;
  for (const auto& z : comps)
    for (double t : z) raw_max = std::max(raw_max, t);
  const double repaired_max = finalize_components(comps, report);
  EventStream stream;
  stream.duration =
      opts.T_override ? *opts.T_override : std::ceil(repaired_max);
  if (stream.duration <= 0.0) stream.duration = 1.0;
  if (raw_max > stream.duration)
    throw Error("timestamps exceed the requested duration");
  if (repaired_max > stream.duration)
    throw NonmonotonicAfterRepair(
        "duplicate repair pushed a timestamp past the duration");
  stream.events = std::move(comps);
  stream.validate();
  return stream;
}

std::vector<EventStream> read_streams(std::span<const std::string> paths,
                                      const ReadOptions& opts,
                                      ReadReport* report) {
  if (paths.empty()) throw Error("no input stream files");
  std::vector<EventStream> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(read_stream(p, opts, report));
  const int d = out.front().dim();
  for (const auto& s : out)
    if (s.dim() != d)
      throw Error("stream files disagree on the dimension; pass --dim");
  return out;
}

void write_stream(const EventStream& stream, const std::string& path,
                  StreamFormat format) {
  std::ofstream out = open_output(path);
  if (format == StreamFormat::CsvLong) {
    std::vector<std::pair<double, int>> all;
    all.reserve(stream.total_events());
    for (int i = 0; i < stream.dim(); ++i)
      for (double t : stream.events[static_cast<std::size_t>(i)])
        all.emplace_back(t, i);
    std::stable_sort(all.begin(), all.end());
    for (const auto& [t, comp] : all)
      out << comp << ',' << format_double(t) << '\n';
  } else {
    const int d = stream.dim();
    for (int i = 0; i < d; ++i) out << (i ? "," : "") << 'c' << i;
    out << '\n';
    const std::size_t rows = stream.max_component_events();
    for (std::size_t r = 0; r < rows; ++r) {
      for (int i = 0; i < d; ++i) {
        const auto& z = stream.events[static_cast<std::size_t>(i)];
        if (i) out << ',';
        if (r < z.size()) out << format_double(z[r]);
      }
      out << '\n';
    }
  }
  if (!out) throw Error("failed writing '" + path + "'");
}

namespace {

KernelFamily family_from_token(std::string_view tok, long line_no) {
  std::string t(tok);
  std::transform(t.begin(), t.end(), t.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (t == "exponential" || t == "exp") return KernelFamily::Exponential;
  if (t == "rectangular" || t == "rect") return KernelFamily::Rectangular;
  if (t == "powerlaw" || t == "plaw" || t == "power-law")
    return KernelFamily::PowerLaw;
  throw ParseError("unknown kernel family '" + t + "'", line_no);
}

const char* family_token(KernelFamily f) {
  switch (f) {
    case KernelFamily::Exponential: return "exponential";
    case KernelFamily::Rectangular: return "rectangular";
    case KernelFamily::PowerLaw: return "powerlaw";
  }
  return "exponential";
}

void parse_range(std::string_view tok, long line_no, int* lo, int* hi) {
  const auto parts = split(tok, ':');
  long a, b;
  if (parts.size() != 2 || !parse_int(parts[0], &a) ||
      !parse_int(parts[1], &b) || a < 0 || b <= a)
    throw ParseError("bad index range '" + std::string(tok) +
                         "', expected lo:hi",
                     line_no);
  *lo = static_cast<int>(a);
  *hi = static_cast<int>(b);
}

}  // namespace

ModelConfig read_model_config(const std::string& path) {
  std::ifstream in = open_input(path);
  ModelConfig cfg;
  int dim = 0;
  std::vector<double> baseline;
  struct KernelLine {
    int r0, r1, c0, c1;
    KernelSpec k;
  };
  std::vector<KernelLine> kernel_lines;
  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    const std::size_t eq = sv.find('=');
    if (eq == std::string_view::npos)
      throw ParseError("expected 'key = value'", line_no);
    const std::string key{trim(sv.substr(0, eq))};
    const std::string_view value = trim(sv.substr(eq + 1));
    if (key == "dim") {
      long v;
      if (!parse_int(value, &v) || v < 1)
        throw ParseError("dim must be a positive integer", line_no);
      dim = static_cast<int>(v);
    } else if (key == "horizon_seconds") {
      if (!parse_double(value, &cfg.horizon_seconds))
        throw ParseError("bad horizon_seconds", line_no);
    } else if (key == "baseline_per_second") {
      for (const auto& tok : split_ws(value)) {
        double v;
        if (!parse_double(tok, &v))
          throw ParseError("bad baseline value '" + std::string(tok) + "'",
                           line_no);
        baseline.push_back(v);
      }
    } else if (key == "labels") {
      for (const auto& tok : split_ws(value)) cfg.labels.emplace_back(tok);
    } else if (key == "kernel" || key == "kernel_block") {
      const auto toks = split_ws(value);
      if (toks.size() < 5)
        throw ParseError("kernel lines need: target source family alpha "
                         "beta_per_second [gamma]",
                         line_no);
      KernelLine kl;
      if (key == "kernel") {
        long i, j;
        if (!parse_int(toks[0], &i) || !parse_int(toks[1], &j) || i < 0 ||
            j < 0)
          throw ParseError("bad kernel indices", line_no);
        kl.r0 = static_cast<int>(i);
        kl.r1 = kl.r0 + 1;
        kl.c0 = static_cast<int>(j);
        kl.c1 = kl.c0 + 1;
      } else {
        parse_range(toks[0], line_no, &kl.r0, &kl.r1);
        parse_range(toks[1], line_no, &kl.c0, &kl.c1);
      }
      kl.k.family = family_from_token(toks[2], line_no);
      if (!parse_double(toks[3], &kl.k.alpha))
        throw ParseError("bad kernel alpha", line_no);
      if (!parse_double(toks[4], &kl.k.beta))
        throw ParseError("bad kernel beta", line_no);
      kl.k.gamma = 0.0;
      if (toks.size() > 5 && !parse_double(toks[5], &kl.k.gamma))
        throw ParseError("bad kernel gamma", line_no);
      kernel_lines.push_back(kl);
    } else {
      throw ParseError("unknown key '" + key + "'", line_no);
    }
  }
  if (dim < 1) throw Error("model config is missing 'dim'");
  cfg.model = HawkesModel(dim);
  if (baseline.size() == 1)
    cfg.model.mu.setConstant(baseline[0]);
  else if (baseline.size() == static_cast<std::size_t>(dim))
    for (int i = 0; i < dim; ++i) cfg.model.mu[i] = baseline[static_cast<std::size_t>(i)];
  else if (!baseline.empty())
    throw Error("baseline_per_second needs 1 or dim values");
  if (!cfg.labels.empty() &&
      cfg.labels.size() != static_cast<std::size_t>(dim))
    throw Error("labels must list dim names");
  for (const auto& kl : kernel_lines) {
    if (kl.r1 > dim || kl.c1 > dim)
      throw Error("kernel indices exceed dim");
    for (int i = kl.r0; i < kl.r1; ++i)
      for (int j = kl.c0; j < kl.c1; ++j) cfg.model.kernel(i, j) = kl.k;
  }
  cfg.model.validate();
  return cfg;
}

void write_model_config(const ModelConfig& cfg, const std::string& path) {
  std::ofstream out = open_output(path);
  const int d = cfg.model.dim();
  out << "dim = " << d << '\n';
  out << "horizon_seconds = " << format_double(cfg.horizon_seconds) << '\n';
  out << "baseline_per_second =";
  for (int i = 0; i < d; ++i) out << ' ' << format_double(cfg.model.mu[i]);
  out << '\n';
  if (!cfg.labels.empty()) {
    out << "labels =";
    for (const auto& l : cfg.labels) out << ' ' << l;
    out << '\n';
  }
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (const auto& k = cfg.model.kernel(i, j))
        out << "kernel = " << i << ' ' << j << ' ' << family_token(k->family)
            << ' ' << format_double(k->alpha) << ' '
            << format_double(k->beta) << ' ' << format_double(k->gamma)
            << '\n';
  if (!out) throw Error("failed writing '" + path + "'");
}

namespace {

ordered_json json_vector(const Vector& v) {
  ordered_json arr = ordered_json::array();
  for (int i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

ordered_json json_matrix(const Matrix& m) {
  ordered_json rows = ordered_json::array();
  for (int i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Vector vector_from_json(const ordered_json& j) {
  Vector v(static_cast<int>(j.size()));
  for (int i = 0; i < v.size(); ++i)
    v[i] = j[static_cast<std::size_t>(i)].get<double>();
  return v;
}

Matrix matrix_from_json(const ordered_json& j) {
  const int rows = static_cast<int>(j.size());
  const int cols = rows > 0 ? static_cast<int>(j[0].size()) : 0;
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int c = 0; c < cols; ++c)
      m(i, c) = j[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]
                    .get<double>();
  return m;
}

ordered_json json_echo(const std::map<std::string, std::string>& echo) {
  ordered_json obj = ordered_json::object();
  for (const auto& [k, v] : echo) obj[k] = v;
  return obj;
}

ordered_json parse_json_file(const std::string& path) {
  std::ifstream in = open_input(path);
  ordered_json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error("failed parsing '" + path + "': " + e.what());
  }
  return j;
}

void dump_json_file(const ordered_json& j, const std::string& path) {
  std::ofstream out = open_output(path);
  out << j.dump(2) << '\n';
  if (!out) throw Error("failed writing '" + path + "'");
}

std::vector<std::string> labels_or_default(std::span<const std::string> labels,
                                           int d) {
  if (!labels.empty()) return {labels.begin(), labels.end()};
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) out.push_back("c" + std::to_string(i));
  return out;
}

}  // namespace

void write_cumulant_file(const CumulantSet& cumulants,
                         std::span<const std::string> labels,
                         const std::map<std::string, std::string>& config_echo,
                         const std::string& path) {
  ordered_json j;
  j["tool_version"] = kToolVersion;
  j["dim"] = cumulants.dim();
  j["labels"] = labels_or_default(labels, cumulants.dim());
  j["H_seconds"] = cumulants.H;
  j["duration_seconds"] = cumulants.duration;
  j["source"] =
      cumulants.source == CumulantSource::Empirical ? "empirical"
                                                    : "theoretical";
  j["lambda_per_second"] = json_vector(cumulants.Lambda);
  j["covariance"] = json_matrix(cumulants.C);
  j["skewness_slice"] = json_matrix(cumulants.Kc);
  j["config_echo"] = json_echo(config_echo);
  dump_json_file(j, path);
}

CumulantSet read_cumulant_file(const std::string& path,
                               std::vector<std::string>* labels) {
  const ordered_json j = parse_json_file(path);
  CumulantSet cs;
  try {
    cs.H = j.at("H_seconds").get<double>();
    cs.duration = j.at("duration_seconds").get<double>();
    cs.source = j.at("source").get<std::string>() == "theoretical"
                    ? CumulantSource::Theoretical
                    : CumulantSource::Empirical;
    cs.Lambda = vector_from_json(j.at("lambda_per_second"));
    cs.C = matrix_from_json(j.at("covariance"));
    cs.Kc = matrix_from_json(j.at("skewness_slice"));
    if (labels) *labels = j.at("labels").get<std::vector<std::string>>();
  } catch (const std::exception& e) {
    throw Error("malformed cumulant file '" + path + "': " + e.what());
  }
  return cs;
}

void write_result_file(const ResultDocument& doc, const std::string& path) {
  ordered_json j;
  j["tool_version"] = doc.tool_version;
  j["dim"] = doc.dim;
  j["labels"] = labels_or_default(doc.labels, doc.dim);
  j["H_seconds"] = doc.cumulants.H;
  j["duration_seconds"] = doc.cumulants.duration;
  j["kappa"] = doc.result.kappa;
  j["lambda_per_second"] = json_vector(doc.cumulants.Lambda);
  j["covariance"] = json_matrix(doc.cumulants.C);
  j["skewness_slice"] = json_matrix(doc.cumulants.Kc);
  j["R"] = json_matrix(doc.result.R_hat);
  j["G"] = json_matrix(doc.result.G_hat);
  j["Psi"] = json_matrix(doc.result.Psi_hat);
  j["mu_per_second"] = json_vector(doc.result.mu_hat);
  j["spectral_radius"] = doc.result.spectral_radius;
  j["largest_singular_value"] = doc.result.largest_singular_value;
  j["final_loss"] = doc.result.final_loss;
  j["converged"] = doc.result.converged;
  j["restart_index"] = doc.result.restart_index;
  j["nonstationary_warning"] = doc.result.nonstationary_warning;
  j["negative_mu_warning"] = doc.result.negative_mu_warning;
  j["loss_trajectory"] = doc.result.loss_trajectory;
  if (doc.mae_vs_truth) j["mae_vs_truth"] = *doc.mae_vs_truth;
  j["config_echo"] = json_echo(doc.config_echo);
  dump_json_file(j, path);
}

ResultDocument read_result_file(const std::string& path) {
  const ordered_json j = parse_json_file(path);
  ResultDocument doc;
  try {
    doc.tool_version = j.at("tool_version").get<std::string>();
    doc.dim = j.at("dim").get<int>();
    doc.labels = j.at("labels").get<std::vector<std::string>>();
    doc.cumulants.H = j.at("H_seconds").get<double>();
    doc.cumulants.duration = j.at("duration_seconds").get<double>();
    doc.cumulants.source = CumulantSource::Empirical;
    doc.cumulants.Lambda = vector_from_json(j.at("lambda_per_second"));
    doc.cumulants.C = matrix_from_json(j.at("covariance"));
    doc.cumulants.Kc = matrix_from_json(j.at("skewness_slice"));
    doc.result.kappa = j.at("kappa").get<double>();
    doc.result.R_hat = matrix_from_json(j.at("R"));
    doc.result.G_hat = matrix_from_json(j.at("G"));
    doc.result.Psi_hat = matrix_from_json(j.at("Psi"));
    doc.result.mu_hat = vector_from_json(j.at("mu_per_second"));
    doc.result.Lambda_hat = doc.cumulants.Lambda;
    doc.result.spectral_radius = j.at("spectral_radius").get<double>();
    doc.result.largest_singular_value =
        j.at("largest_singular_value").get<double>();
    doc.result.final_loss = j.at("final_loss").get<double>();
    doc.result.converged = j.at("converged").get<bool>();
    doc.result.restart_index = j.at("restart_index").get<int>();
    doc.result.nonstationary_warning =
        j.at("nonstationary_warning").get<bool>();
    doc.result.negative_mu_warning = j.at("negative_mu_warning").get<bool>();
    doc.result.loss_trajectory =
        j.at("loss_trajectory").get<std::vector<double>>();
    if (j.contains("mae_vs_truth"))
      doc.mae_vs_truth = j.at("mae_vs_truth").get<double>();
    for (const auto& [k, v] : j.at("config_echo").items())
      doc.config_echo[k] = v.get<std::string>();
  } catch (const std::exception& e) {
    throw Error("malformed result file '" + path + "': " + e.what());
  }
  return doc;
}

void write_matrix_tsv(const Matrix& m, std::span<const std::string> labels,
                      const std::string& path) {
  const auto names = labels_or_default(labels, static_cast<int>(m.rows()));
  std::ofstream out = open_output(path);
  out << "label";
  for (int j = 0; j < m.cols(); ++j) out << '\t' << names[static_cast<std::size_t>(j)];
  out << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    out << names[static_cast<std::size_t>(i)];
    for (int j = 0; j < m.cols(); ++j) out << '\t' << format_double(m(i, j));
    out << '\n';
  }
  if (!out) throw Error("failed writing '" + path + "'");
}

void write_analysis_report(const AnalysisReport& report,
                           const std::string& json_path,
                           const std::string& text_path) {
  ordered_json j;
  j["tool_version"] = kToolVersion;
  j["labels"] = report.labels;
  ordered_json groups = ordered_json::object();
  for (const auto& [name, idx] : report.groups) groups[name] = idx;
  j["groups"] = groups;
  j["exogenous_fraction"] = json_vector(report.exogenous);
  j["ancestor_fraction_order"] = report.group_names;
  j["ancestor_fraction_target_by_source"] =
      json_matrix(report.ancestor_fractions);
  ordered_json syms = ordered_json::array();
  for (const auto& s : report.symmetries) {
    ordered_json e;
    e["name"] = s.name;
    e["mean_abs_difference"] = s.mean_abs_difference;
    e["compared_entries"] = s.compared_entries;
    syms.push_back(std::move(e));
  }
  j["symmetry_report"] = syms;
  dump_json_file(j, json_path);

  std::ofstream out = open_output(text_path);
  char buf[64];
  out << "exogenous fraction (mu/Lambda)\n";
  for (std::size_t i = 0; i < report.labels.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "  %-8s %10.6f",
                  report.labels[i].c_str(), report.exogenous[static_cast<int>(i)]);
    out << buf << '\n';
  }
  out << "\nancestor fractions (row: target, column: source)\n";
  out << "  " << "          ";
  for (const auto& g : report.group_names) {
    std::snprintf(buf, sizeof(buf), " %12s", g.c_str());
    out << buf;
  }
  out << '\n';
  for (std::size_t r = 0; r < report.group_names.size(); ++r) {
    std::snprintf(buf, sizeof(buf), "  %-10s", report.group_names[r].c_str());
    out << buf;
    for (std::size_t c = 0; c < report.group_names.size(); ++c) {
      std::snprintf(buf, sizeof(buf), " %12.6f",
                    report.ancestor_fractions(static_cast<int>(r),
                                              static_cast<int>(c)));
      out << buf;
    }
    out << '\n';
  }
  if (!report.symmetries.empty()) {
    out << "\nsymmetry report (mean |G_ij - G_sigma(i)sigma(j)|)\n";
    for (const auto& s : report.symmetries) {
      std::snprintf(buf, sizeof(buf), "  %-10s %10.6f  (%d entries)",
                    s.name.c_str(), s.mean_abs_difference,
                    s.compared_entries);
      out << buf << '\n';
    }
  }
  if (!out) throw Error("failed writing '" + text_path + "'");
}

}  // namespace hawkes
