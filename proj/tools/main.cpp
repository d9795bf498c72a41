#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hawkes/analysis.hpp"
#include "hawkes/cumulants.hpp"
#include "hawkes/estimator.hpp"
#include "hawkes/io.hpp"
#include "hawkes/model.hpp"
#include "hawkes/simulate.hpp"

namespace fs = std::filesystem;
using namespace hawkes;

namespace {

std::string fmt(double x) { return format_double(x); }

// ---- cumulant options shared by `cumulants`, `estimate`, `pipeline` ----

struct CumulantCli {
  std::vector<std::string> inputs;
  std::string format = "long";
  std::optional<double> T_override;
  std::optional<int> dim_override;
  double H = 0.0;  // 0 = not set
  bool select_h = false;
  double grid_min = 0.05;
  double grid_max = 100.0;
  int grid_points = 25;
  double multiple = 5.0;
  double density_h = 0.0;
  std::string boundary = "restrict";
  bool no_symmetrize = false;
  std::vector<std::string> labels;
};

void add_cumulant_options(CLI::App* cmd, CumulantCli* opts) {
  cmd->add_option("--in", opts->inputs, "input stream files (one realization each)")
      ->required();
  cmd->add_option("--format", opts->format, "stream file format")
      ->check(CLI::IsMember({"long", "columns"}));
  cmd->add_option("--T", opts->T_override, "observation duration override, seconds");
  cmd->add_option("--dim", opts->dim_override, "number of components override");
  cmd->add_option("--H", opts->H, "cumulant window half-width, seconds");
  cmd->add_flag("--select-H", opts->select_h,
                "pick H from the covariance density decay");
  cmd->add_option("--grid-min", opts->grid_min, "smallest lag in the H-selection grid");
  cmd->add_option("--grid-max", opts->grid_max, "largest lag in the H-selection grid");
  cmd->add_option("--grid-points", opts->grid_points, "H-selection grid size");
  cmd->add_option("--multiple", opts->multiple, "H = multiple * tau_c");
  cmd->add_option("--density-h", opts->density_h,
                  "bin width for the pointwise density");
  cmd->add_option("--boundary", opts->boundary, "window boundary policy")
      ->check(CLI::IsMember({"clip", "restrict"}));
  cmd->add_flag("--no-symmetrize", opts->no_symmetrize,
                "keep the raw asymmetric covariance estimate");
  cmd->add_option("--labels", opts->labels, "component labels");
}

ReadOptions read_options(const CumulantCli& opts) {
  ReadOptions r;
  r.format = opts.format == "columns" ? StreamFormat::PerComponentColumns
                                      : StreamFormat::CsvLong;
  r.T_override = opts.T_override;
  r.dim_override = opts.dim_override;
  return r;
}

struct CumulantRun {
  CumulantSet cumulants;
  std::vector<std::string> labels;
  std::map<std::string, std::string> echo;
  std::size_t repaired = 0;
  std::vector<EventStream> streams;
};

CumulantRun run_cumulants(const CumulantCli& opts) {
  CumulantRun run;
  ReadReport report;
  run.streams = read_streams(opts.inputs, read_options(opts), &report);
  run.repaired = report.repaired_duplicates;

  CumulantConfig cfg;
  cfg.boundary = opts.boundary == "clip" ? BoundaryPolicy::ClipCounts
                                         : BoundaryPolicy::RestrictAnchors;
  cfg.symmetrize_C = !opts.no_symmetrize;
  if (opts.select_h) {
    std::vector<double> grid;
    const double ratio = std::pow(opts.grid_max / opts.grid_min,
                                  1.0 / std::max(1, opts.grid_points - 1));
    double t = opts.grid_min;
    for (int k = 0; k < opts.grid_points; ++k, t *= ratio) grid.push_back(t);
    cfg.H = select_H(run.streams.front(), grid, opts.multiple,
                     opts.density_h);
    run.echo["H_selected"] = "true";
  } else if (opts.H > 0.0) {
    cfg.H = opts.H;
    run.echo["H_selected"] = "false";
  } else {
    throw Error("pass --H or --select-H");
  }

  std::vector<CumulantSet> parts;
  parts.reserve(run.streams.size());
  for (const auto& s : run.streams) parts.push_back(estimate_cumulants(s, cfg));
  run.cumulants = aggregate_cumulants(parts);

  run.labels = opts.labels;
  run.echo["H_seconds"] = fmt(cfg.H);
  run.echo["boundary"] = opts.boundary;
  run.echo["symmetrize_C"] = cfg.symmetrize_C ? "true" : "false";
  run.echo["realizations"] = std::to_string(run.streams.size());
  run.echo["repaired_duplicates"] = std::to_string(run.repaired);
  return run;
}

// ---- estimator options ----

struct EstimateCli {
  int restarts = 4;
  std::uint64_t seed = 1;
  int max_iter = 6000;
  double tol = 1e-12;
  double perturbation = 0.1;
  std::string step = "backtracking";
  double fixed_step = 1e-6;
};

void add_estimate_options(CLI::App* cmd, EstimateCli* opts) {
  cmd->add_option("--restarts", opts->restarts, "extra jittered starts");
  cmd->add_option("--seed", opts->seed, "seed for the restart jitter");
  cmd->add_option("--max-iter", opts->max_iter, "iteration cap per start");
  cmd->add_option("--tol", opts->tol, "relative loss-decrease stop");
  cmd->add_option("--perturbation", opts->perturbation,
                  "restart jitter relative scale");
  cmd->add_option("--step", opts->step, "descent step rule")
      ->check(CLI::IsMember({"backtracking", "fixed"}));
  cmd->add_option("--fixed-step", opts->fixed_step,
                  "step size for --step fixed");
}

NphcConfig nphc_config(const EstimateCli& opts) {
  NphcConfig cfg;
  cfg.restarts = opts.restarts;
  cfg.seed = opts.seed;
  cfg.max_iterations = opts.max_iter;
  cfg.tolerance = opts.tol;
  cfg.perturbation_scale = opts.perturbation;
  cfg.step_rule = opts.step == "fixed" ? StepRule::FixedStep
                                       : StepRule::BacktrackingLineSearch;
  cfg.fixed_step = opts.fixed_step;
  return cfg;
}

void echo_estimate(const EstimateCli& opts,
                   std::map<std::string, std::string>* echo) {
  (*echo)["restarts"] = std::to_string(opts.restarts);
  (*echo)["seed"] = std::to_string(opts.seed);
  (*echo)["max_iterations"] = std::to_string(opts.max_iter);
  (*echo)["tolerance"] = fmt(opts.tol);
  (*echo)["perturbation_scale"] = fmt(opts.perturbation);
  (*echo)["step_rule"] = opts.step;
}

struct EstimateOutputs {
  std::string out;
  std::string tsv_prefix;
  std::string truth;
  int slots = 1;
};

ResultDocument run_estimate(const CumulantRun& cumulants,
                            const EstimateCli& ecli,
                            const EstimateOutputs& outputs) {
  ResultDocument doc;
  doc.dim = cumulants.cumulants.dim();
  doc.labels = cumulants.labels;
  doc.cumulants = cumulants.cumulants;
  doc.config_echo = cumulants.echo;
  echo_estimate(ecli, &doc.config_echo);
  doc.result = estimate(cumulants.cumulants, nphc_config(ecli));
  if (!outputs.truth.empty()) {
    const ModelConfig truth_cfg = read_model_config(outputs.truth);
    if (truth_cfg.model.dim() != doc.dim)
      throw Error("--truth model dimension does not match the data");
    doc.mae_vs_truth =
        (doc.result.G_hat - g_from_model(truth_cfg.model)).cwiseAbs().mean();
    doc.config_echo["truth"] = outputs.truth;
  }
  write_result_file(doc, outputs.out);
  if (!outputs.tsv_prefix.empty()) {
    write_matrix_tsv(doc.result.G_hat, doc.labels, outputs.tsv_prefix + "_G.tsv");
    write_matrix_tsv(doc.result.R_hat, doc.labels, outputs.tsv_prefix + "_R.tsv");
    write_matrix_tsv(doc.result.Psi_hat, doc.labels,
                     outputs.tsv_prefix + "_Psi.tsv");
  }
  return doc;
}

void print_estimate_summary(const ResultDocument& doc) {
  std::printf("dim %d, H = %s s, kappa = %s\n", doc.dim,
              fmt(doc.cumulants.H).c_str(), fmt(doc.result.kappa).c_str());
  std::printf("final loss %s after %zu evaluations (restart %d, %s)\n",
              fmt(doc.result.final_loss).c_str(),
              doc.result.loss_trajectory.size(), doc.result.restart_index,
              doc.result.converged ? "converged" : "iteration cap");
  std::printf("spectral radius of G_hat: %s (largest singular value %s)\n",
              fmt(doc.result.spectral_radius).c_str(),
              fmt(doc.result.largest_singular_value).c_str());
  if (doc.result.nonstationary_warning)
    std::printf("warning: estimated G is not stationary\n");
  if (doc.result.negative_mu_warning)
    std::printf("warning: some baseline estimates are negative\n");
  if (doc.mae_vs_truth)
    std::printf("G mean-abs error vs truth: %s\n",
                fmt(*doc.mae_vs_truth).c_str());
}

// per-slot estimation path shared by `estimate` and `pipeline`
void run_slotwise(const CumulantRun& base, const CumulantCli& ccli,
                  const EstimateCli& ecli, const EstimateOutputs& outputs) {
  const auto slots = split_into_slots(base.streams, outputs.slots);
  CumulantConfig cfg;
  cfg.H = std::stod(base.echo.at("H_seconds"));
  cfg.boundary = ccli.boundary == "clip" ? BoundaryPolicy::ClipCounts
                                         : BoundaryPolicy::RestrictAnchors;
  cfg.symmetrize_C = !ccli.no_symmetrize;
  const auto outcomes = slotwise_estimate(slots, nphc_config(ecli), cfg);
  const fs::path base_path(outputs.out);
  for (std::size_t s = 0; s < outcomes.size(); ++s) {
    fs::path slot_path = base_path;
    slot_path.replace_filename(base_path.stem().string() + "_slot" +
                               std::to_string(s) +
                               base_path.extension().string());
    if (!outcomes[s].result) {
      std::printf("slot %zu failed: %s\n", s, outcomes[s].error.c_str());
      continue;
    }
    ResultDocument doc;
    doc.dim = base.cumulants.dim();
    doc.labels = base.labels;
    doc.cumulants.Lambda = outcomes[s].result->Lambda_hat;
    doc.cumulants.C = base.cumulants.C;  // slot documents echo the slot span
    doc.cumulants.Kc = base.cumulants.Kc;
    doc.cumulants.H = cfg.H;
    doc.cumulants.duration = slots[s].empty() ? 0.0 : slots[s][0].duration;
    doc.config_echo = base.echo;
    echo_estimate(ecli, &doc.config_echo);
    doc.config_echo["slot"] = std::to_string(s);
    doc.config_echo["slots"] = std::to_string(outputs.slots);
    doc.result = *outcomes[s].result;
    write_result_file(doc, slot_path.string());
    std::printf("slot %zu: mu_hat =", s);
    for (int i = 0; i < doc.dim; ++i)
      std::printf(" %s", fmt(doc.result.mu_hat[i]).c_str());
    std::printf("\n");
  }
}

// ---- analyze ----

struct AnalyzeCli {
  std::string result_file;
  std::string taxonomy;
  std::vector<std::string> group_specs;
  std::vector<std::string> swap_specs;
  std::string out_json;
  std::string out_text;
};

std::vector<int> parse_index_list(const std::string& text,
                                  const std::string& what) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t next = text.find(',', pos);
    if (next == std::string::npos) next = text.size();
    try {
      out.push_back(std::stoi(text.substr(pos, next - pos)));
    } catch (const std::exception&) {
      throw Error("bad index in " + what + ": '" + text + "'");
    }
    pos = next + 1;
  }
  if (out.empty()) throw Error(what + " lists no indices");
  return out;
}

void run_analyze(const AnalyzeCli& opts) {
  const ResultDocument doc = read_result_file(opts.result_file);

  EventTaxonomy tax;
  std::vector<SwapSymmetry> symmetries;
  if (opts.taxonomy == "eurex12") {
    tax = EventTaxonomy::eurex12();
    if (doc.dim != tax.dim())
      throw Error("eurex12 taxonomy needs a 12-dimensional result");
    symmetries = EventTaxonomy::eurex12_mirrors();
  } else if (!opts.taxonomy.empty()) {
    throw Error("unknown taxonomy '" + opts.taxonomy + "'");
  } else {
    tax.labels = doc.labels;
  }
  for (const auto& spec : opts.group_specs) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos)
      throw Error("--group expects name=i,j,...");
    tax.groups[spec.substr(0, eq)] =
        parse_index_list(spec.substr(eq + 1), "--group");
  }
  if (tax.groups.empty())
    for (int i = 0; i < doc.dim; ++i)
      tax.groups[tax.labels.empty() ? "c" + std::to_string(i)
                                    : tax.labels[static_cast<std::size_t>(i)]] = {i};
  tax.validate();
  for (const auto& spec : opts.swap_specs) {
    const std::size_t eq = spec.find('=');
    if (eq == std::string::npos)
      throw Error("--swap expects name=a-b,c-d,...");
    SwapSymmetry sym;
    sym.name = spec.substr(0, eq);
    const std::string rest = spec.substr(eq + 1);
    std::size_t pos = 0;
    while (pos < rest.size()) {
      std::size_t next = rest.find(',', pos);
      if (next == std::string::npos) next = rest.size();
      const std::string tok = rest.substr(pos, next - pos);
      const std::size_t dash = tok.find('-');
      if (dash == std::string::npos)
        throw Error("--swap pair '" + tok + "' needs the form a-b");
      try {
        sym.swaps.emplace_back(std::stoi(tok.substr(0, dash)),
                               std::stoi(tok.substr(dash + 1)));
      } catch (const std::exception&) {
        throw Error("bad --swap pair '" + tok + "'");
      }
      pos = next + 1;
    }
    symmetries.push_back(std::move(sym));
  }

  AnalysisReport report;
  report.labels = tax.labels.empty() ? doc.labels : tax.labels;
  report.groups = tax.groups;
  report.exogenous =
      exogenous_fraction(doc.result.mu_hat, doc.result.Lambda_hat);
  for (const auto& [name, idx] : tax.groups) report.group_names.push_back(name);
  const int ng = static_cast<int>(report.group_names.size());
  report.ancestor_fractions = Matrix::Zero(ng, ng);
  for (int t = 0; t < ng; ++t)
    for (int s = 0; s < ng; ++s)
      report.ancestor_fractions(t, s) = ancestor_fraction(
          doc.result,
          tax.groups.at(report.group_names[static_cast<std::size_t>(s)]),
          tax.groups.at(report.group_names[static_cast<std::size_t>(t)]));
  report.symmetries = symmetry_report(doc.result, symmetries);
  write_analysis_report(report, opts.out_json, opts.out_text);
}

int dispatch(int argc, char** argv) {
  CLI::App app{"multivariate Hawkes branching-ratio estimation from "
               "integrated cumulants"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate",
                                 "sample event streams from a model config");
  std::string sim_config, sim_out;
  std::string sim_format = "long";
  std::uint64_t sim_seed = 0;
  std::size_t sim_realizations = 1;
  double sim_margin = 1.0;
  std::optional<double> sim_horizon;
  std::optional<std::size_t> sim_max_events;
  sim->add_option("--config", sim_config, "model config file")->required();
  sim->add_option("--out", sim_out, "output stream file")->required();
  sim->add_option("--seed", sim_seed, "simulation seed");
  sim->add_option("--realizations", sim_realizations,
                  "independent realizations");
  sim->add_option("--margin", sim_margin, "thinning majorant multiplier");
  sim->add_option("--horizon", sim_horizon,
                  "override the config horizon, seconds");
  sim->add_option("--max-events", sim_max_events, "event cap per realization");
  sim->add_option("--format", sim_format, "stream file format")
      ->check(CLI::IsMember({"long", "columns"}));

  // cumulants
  auto* cum = app.add_subcommand("cumulants",
                                 "estimate integrated cumulants from streams");
  CumulantCli cum_opts;
  std::string cum_out;
  add_cumulant_options(cum, &cum_opts);
  cum->add_option("--out", cum_out, "output cumulant file")->required();

  // estimate
  auto* est = app.add_subcommand("estimate",
                                 "fit the branching-ratio matrix");
  CumulantCli est_cum_opts;
  EstimateCli est_opts;
  EstimateOutputs est_outputs;
  std::string est_cumulant_file;
  auto* est_in = est->add_option("--in", est_cum_opts.inputs,
                                 "input stream files");
  est->add_option("--cumulants", est_cumulant_file,
                  "precomputed cumulant file")
      ->excludes(est_in);
  est->add_option("--format", est_cum_opts.format, "stream file format")
      ->check(CLI::IsMember({"long", "columns"}));
  est->add_option("--T", est_cum_opts.T_override, "duration override");
  est->add_option("--dim", est_cum_opts.dim_override, "dimension override");
  est->add_option("--H", est_cum_opts.H, "window half-width");
  est->add_flag("--select-H", est_cum_opts.select_h, "pick H automatically");
  est->add_option("--grid-min", est_cum_opts.grid_min, "H grid start");
  est->add_option("--grid-max", est_cum_opts.grid_max, "H grid end");
  est->add_option("--grid-points", est_cum_opts.grid_points, "H grid size");
  est->add_option("--multiple", est_cum_opts.multiple, "H multiple");
  est->add_option("--density-h", est_cum_opts.density_h, "density bin width");
  est->add_option("--boundary", est_cum_opts.boundary, "boundary policy")
      ->check(CLI::IsMember({"clip", "restrict"}));
  est->add_flag("--no-symmetrize", est_cum_opts.no_symmetrize,
                "skip covariance symmetrization");
  est->add_option("--labels", est_cum_opts.labels, "component labels");
  add_estimate_options(est, &est_opts);
  est->add_option("--out", est_outputs.out, "result file")->required();
  est->add_option("--tsv-prefix", est_outputs.tsv_prefix,
                  "write G/R/Psi TSV matrices with this prefix");
  est->add_option("--truth", est_outputs.truth,
                  "model config with the ground-truth kernels");
  est->add_option("--slots", est_outputs.slots,
                  "split realizations into equal time slots");

  // analyze
  auto* ana = app.add_subcommand("analyze",
                                 "derive endogeneity reports from a result");
  AnalyzeCli ana_opts;
  ana->add_option("--result", ana_opts.result_file, "result file")->required();
  ana->add_option("--taxonomy", ana_opts.taxonomy,
                  "canned label set (eurex12)");
  ana->add_option("--group", ana_opts.group_specs,
                  "named group, name=i,j,...");
  ana->add_option("--swap", ana_opts.swap_specs,
                  "mirror symmetry, name=a-b,c-d");
  ana->add_option("--out-json", ana_opts.out_json, "report JSON")->required();
  ana->add_option("--out-text", ana_opts.out_text, "report text table")
      ->required();

  // pipeline
  auto* pipe = app.add_subcommand(
      "pipeline", "cumulants -> estimate -> analyze in one run");
  CumulantCli pipe_cum;
  EstimateCli pipe_est;
  std::string pipe_dir;
  std::string pipe_truth;
  int pipe_slots = 1;
  std::string pipe_taxonomy;
  std::vector<std::string> pipe_groups, pipe_swaps;
  add_cumulant_options(pipe, &pipe_cum);
  add_estimate_options(pipe, &pipe_est);
  pipe->add_option("--out-dir", pipe_dir, "output directory")->required();
  pipe->add_option("--truth", pipe_truth, "ground-truth model config");
  pipe->add_option("--slots", pipe_slots, "equal time slots");
  pipe->add_option("--taxonomy", pipe_taxonomy, "canned label set");
  pipe->add_option("--group", pipe_groups, "named group, name=i,j,...");
  pipe->add_option("--swap", pipe_swaps, "mirror symmetry, name=a-b,c-d");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::fprintf(stderr, "{\"error\":\"usage\",\"message\":\"%s\"}\n",
                 e.what());
    return 2;
  }

  if (sim->parsed()) {
    const ModelConfig cfg = read_model_config(sim_config);
    SimConfig sc;
    sc.horizon = sim_horizon.value_or(cfg.horizon_seconds);
    sc.seed = sim_seed;
    sc.max_events = sim_max_events;
    sc.upper_bound_margin = sim_margin;
    const auto runs = simulate_batch(cfg.model, sc, sim_realizations);
    const StreamFormat format = sim_format == "columns"
                                    ? StreamFormat::PerComponentColumns
                                    : StreamFormat::CsvLong;
    for (std::size_t k = 0; k < runs.size(); ++k) {
      std::string path = sim_out;
      if (runs.size() > 1) {
        const fs::path p(sim_out);
        char suffix[8];
        std::snprintf(suffix, sizeof(suffix), "_%03zu", k);
        path = (p.parent_path() /
                (p.stem().string() + suffix + p.extension().string()))
                   .string();
      }
      write_stream(runs[k].stream, path, format);
      std::printf("%s: %zu events (%llu candidates, accept ratio %s%s)\n",
                  path.c_str(), runs[k].stream.total_events(),
                  static_cast<unsigned long long>(runs[k].candidates),
                  fmt(runs[k].candidates
                          ? static_cast<double>(runs[k].accepted) /
                                static_cast<double>(runs[k].candidates)
                          : 0.0)
                      .c_str(),
                  runs[k].truncated ? ", truncated at the event cap" : "");
    }
    return 0;
  }

  if (cum->parsed()) {
    const CumulantRun run = run_cumulants(cum_opts);
    write_cumulant_file(run.cumulants, run.labels, run.echo, cum_out);
    std::printf("wrote %s (H = %s s, %zu realizations)\n", cum_out.c_str(),
                fmt(run.cumulants.H).c_str(), run.streams.size());
    return 0;
  }

  if (est->parsed()) {
    CumulantRun run;
    if (!est_cumulant_file.empty()) {
      run.cumulants = read_cumulant_file(est_cumulant_file, &run.labels);
      run.echo["cumulants_file"] = est_cumulant_file;
      run.echo["H_seconds"] = fmt(run.cumulants.H);
      if (est_outputs.slots > 1)
        throw Error("--slots needs raw streams, not a cumulant file");
    } else {
      if (est_cum_opts.inputs.empty())
        throw Error("pass --in streams or --cumulants file");
      run = run_cumulants(est_cum_opts);
    }
    const ResultDocument doc = run_estimate(run, est_opts, est_outputs);
    print_estimate_summary(doc);
    if (est_outputs.slots > 1)
      run_slotwise(run, est_cum_opts, est_opts, est_outputs);
    return 0;
  }

  if (ana->parsed()) {
    run_analyze(ana_opts);
    std::printf("wrote %s and %s\n", ana_opts.out_json.c_str(),
                ana_opts.out_text.c_str());
    return 0;
  }

  if (pipe->parsed()) {
    fs::create_directories(pipe_dir);
    const fs::path dir(pipe_dir);
    const CumulantRun run = run_cumulants(pipe_cum);
    write_cumulant_file(run.cumulants, run.labels, run.echo,
                        (dir / "cumulants.json").string());
    EstimateOutputs outputs;
    outputs.out = (dir / "result.json").string();
    outputs.tsv_prefix = (dir / "matrices").string();
    outputs.truth = pipe_truth;
    outputs.slots = pipe_slots;
    const ResultDocument doc = run_estimate(run, pipe_est, outputs);
    print_estimate_summary(doc);
    if (pipe_slots > 1) run_slotwise(run, pipe_cum, pipe_est, outputs);
    AnalyzeCli ana_cli;
    ana_cli.result_file = outputs.out;
    ana_cli.taxonomy = pipe_taxonomy;
    ana_cli.group_specs = pipe_groups;
    ana_cli.swap_specs = pipe_swaps;
    ana_cli.out_json = (dir / "report.json").string();
    ana_cli.out_text = (dir / "report.txt").string();
    run_analyze(ana_cli);
    std::printf("pipeline outputs in %s\n", pipe_dir.c_str());
    return 0;
  }

  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const Error& e) {
    std::fprintf(stderr, "{\"error\":\"data\",\"message\":\"%s\"}\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "{\"error\":\"internal\",\"message\":\"%s\"}\n",
                 e.what());
    return 1;
  }
}
