// Command-line front end: estimate, simulate, select-k, baseline-gardes,
// descriptives. Reports go to --out (default stdout) and carry no
// timestamps or thread counts; given the same inputs and seed the bytes are
// identical regardless of --threads.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tailrisk/array_builder.hpp"
#include "tailrisk/baselines.hpp"
#include "tailrisk/csv.hpp"
#include "tailrisk/error.hpp"
#include "tailrisk/k_selection.hpp"
#include "tailrisk/panel.hpp"
#include "tailrisk/report.hpp"
#include "tailrisk/simulation.hpp"
#include "tailrisk/split_aggregation.hpp"
#include "tailrisk/version.hpp"

namespace {

using namespace tailrisk;

// ---- small parsing helpers ----------------------------------------------

std::vector<std::string> split_on(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_double_or_fail(const std::string& s, const std::string& what) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  const auto v = parse_number(s);
  if (!v) fail(Errc::usage, "cannot parse " + what + " '" + s + "'");
  return *v;
}

// Snaps range-generated values onto 12-decimal lattice points so 0.9 prints
// as 0.9, not 0.9000000000000001.
double snap(double v) { return std::round(v * 1e12) / 1e12; }

// "0.1,0.5,0.9" or "0.05:0.95:0.05" (inclusive stop, mixable with commas).
std::vector<double> parse_value_list(const std::string& spec,
                                     const std::string& what) {
  std::vector<double> out;
  for (const std::string& piece : split_on(spec, ',')) {
    if (piece.empty()) fail(Errc::usage, "empty entry in " + what);
    const auto parts = split_on(piece, ':');
    if (parts.size() == 1) {
      out.push_back(parse_double_or_fail(parts[0], what));
    } else if (parts.size() == 3) {
      const double start = parse_double_or_fail(parts[0], what);
      const double stop = parse_double_or_fail(parts[1], what);
      const double step = parse_double_or_fail(parts[2], what);
      if (!(step > 0.0) || stop < start)
        fail(Errc::usage, "bad range '" + piece + "' in " + what);
      const auto count =
          static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
      for (std::size_t i = 0; i <= count; ++i)
        out.push_back(snap(start + static_cast<double>(i) * step));
    } else {
      fail(Errc::usage, "bad entry '" + piece + "' in " + what +
                            " (want value or start:stop:step)");
    }
  }
  return out;
}

// dim 1: a value list. dim > 1: ';'-separated tuples of dim comma-separated
// values (no ranges).
std::vector<std::vector<double>> parse_x0_grid(const std::string& spec,
                                               std::size_t dim) {
  std::vector<std::vector<double>> grid;
  if (dim == 1) {
    for (double v : parse_value_list(spec, "--x0")) grid.push_back({v});
    return grid;
  }
  for (const std::string& tuple : split_on(spec, ';')) {
    std::vector<double> point;
    for (const std::string& cell : split_on(tuple, ','))
      point.push_back(parse_double_or_fail(cell, "--x0"));
    if (point.size() != dim)
      fail(Errc::usage, "--x0 tuple '" + tuple + "' has " +
                            std::to_string(point.size()) + " values, need " +
                            std::to_string(dim));
    grid.push_back(std::move(point));
  }
  return grid;
}

std::string format_point(std::span<const double> x0) {
  std::string s;
  for (std::size_t i = 0; i < x0.size(); ++i) {
    if (i > 0) s += ',';
    s += format_number(x0[i]);
  }
  return s;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::schema, "cannot write '" + path + "'");
  out << content;
}

// ---- shared input handling ----------------------------------------------

struct InputOptions {
  std::string input;
  std::string y_col;
  std::string x_spec;
  bool panel = false;
  std::string id_col = "id";
  std::string period_col = "period";
  std::string earnings_col = "earnings";
  long long base_period = 0;
  long long next_period = 0;
  std::string growth_mode = "absolute";
  std::string covariates_spec;
  std::vector<std::string> filters;
};

// Registers the options shared by every data-reading subcommand.
void add_input_options(CLI::App* cmd, InputOptions& opts, bool need_y_x) {
  cmd->add_option("--input", opts.input, "Input CSV file")->required();
  auto* y = cmd->add_option("--y", opts.y_col,
                            "Column holding the tail variable");
  auto* x = cmd->add_option(
      "--x", opts.x_spec, "Comma-separated conditioning columns");
  auto* panel = cmd->add_flag(
      "--panel", opts.panel,
      "Treat input as a long panel (id,period,earnings) and derive "
      "growth magnitudes and base-earnings ranks");
  cmd->add_option("--id-col", opts.id_col, "Panel id column")
      ->capture_default_str()
      ->needs(panel);
  cmd->add_option("--period-col", opts.period_col, "Panel period column")
      ->capture_default_str()
      ->needs(panel);
  cmd->add_option("--earnings-col", opts.earnings_col,
                  "Panel earnings column")
      ->capture_default_str()
      ->needs(panel);
  auto* base = cmd->add_option("--base-period", opts.base_period,
                               "Panel base period")
                   ->needs(panel);
  auto* next = cmd->add_option("--next-period", opts.next_period,
                               "Panel comparison period")
                   ->needs(panel);
  panel->needs(base);
  panel->needs(next);
  cmd->add_option("--growth-mode", opts.growth_mode,
                  "absolute, left (negative moves), or right (positive)")
      ->capture_default_str()
      ->check(CLI::IsMember({"absolute", "left", "right"}))
      ->needs(panel);
  cmd->add_option("--covariates", opts.covariates_spec,
                  "Extra conditioning columns appended after the rank "
                  "(panel mode)")
      ->needs(panel);
  cmd->add_option("--filter", opts.filters,
                  "column=value row filter on the raw table; repeatable");
  if (need_y_x) {
    y->excludes(panel);
    x->excludes(panel);
  }
}

void apply_filters(CsvTable& table, const std::vector<std::string>& filters,
                   std::vector<std::string>& applied) {
  for (const std::string& f : filters) {
    const auto eq = f.find('=');
    if (eq == std::string::npos || eq == 0)
      fail(Errc::usage, "--filter wants column=value, got '" + f + "'");
    const std::string col = f.substr(0, eq);
    const std::string value = f.substr(eq + 1);
    const auto idx = table.column(col);
    if (!idx) fail(Errc::schema, "missing filter column '" + col + "'");
    std::vector<std::vector<std::string>> kept;
    kept.reserve(table.rows.size());
    for (auto& row : table.rows) {
      if (*idx < row.size() && row[*idx] == value)
        kept.push_back(std::move(row));
    }
    table.rows = std::move(kept);
    applied.push_back(f);
  }
}

struct LoadedInput {
  Dataset data;
  std::vector<double> base_earnings;  // panel mode only
  std::vector<std::string> filters_applied;
  std::string y_label;
  std::size_t rows_dropped = 0;
};

GrowthMode growth_mode_from_name(const std::string& name) {
  if (name == "absolute") return GrowthMode::absolute;
  if (name == "left") return GrowthMode::signed_left;
  if (name == "right") return GrowthMode::signed_right;
  fail(Errc::usage, "unknown growth mode '" + name + "'");
}

LoadedInput load_input(const InputOptions& opts, bool want_base_earnings) {
  CsvTable table = read_csv(opts.input);
  LoadedInput loaded;
  apply_filters(table, opts.filters, loaded.filters_applied);

  if (opts.panel) {
    std::vector<std::string> covariates;
    if (!opts.covariates_spec.empty())
      covariates = split_on(opts.covariates_spec, ',');
    PanelDeriveStats stats;
    const auto records =
        panel_from_table(table, opts.id_col, opts.period_col,
                         opts.earnings_col, covariates, &stats);
    loaded.data = derive_growth_variable(
        records, opts.base_period, opts.next_period,
        growth_mode_from_name(opts.growth_mode), covariates, &stats,
        want_base_earnings ? &loaded.base_earnings : nullptr);
    loaded.rows_dropped = stats.rows_dropped;
    loaded.y_label = opts.growth_mode == "absolute"
                         ? "abs_log_growth"
                         : opts.growth_mode + "_log_growth_magnitude";
    std::cerr << "panel: " << stats.pairs_matched << " matched pairs, "
              << stats.dropped_nonpositive << " dropped nonpositive, "
              << loaded.data.size() << " used\n";
  } else {
    if (opts.y_col.empty() || opts.x_spec.empty())
      fail(Errc::usage, "--y and --x are required without --panel");
    LoadStats stats;
    loaded.data = dataset_from_table(table, opts.input, opts.y_col,
                                     split_on(opts.x_spec, ','), &stats);
    loaded.rows_dropped = stats.rows_dropped;
    loaded.y_label = opts.y_col;
  }
  std::cerr << "input: " << loaded.data.size() << " rows used, "
            << loaded.rows_dropped << " dropped\n";
  return loaded;
}

// ---- subcommand state ----------------------------------------------------

struct EstimateOptions {
  InputOptions in;
  std::string x0_spec;
  std::string scale_spec;
  std::string orders_spec = "2,3,4";
  std::string test_form = "studentized";
  std::string out = "-";
  std::string format = "json";
  std::size_t rows = 0, cols = 0, k = 0, k_min = kDefaultKMin, k_max = 0;
  std::size_t splits = 1000;
  std::uint64_t seed = 42;
  double level = 0.05;
  unsigned threads = 0;
};

struct SimulateOptions {
  int design = 1;
  std::string estimator = "nn";
  std::size_t rows = 0, cols = 0, n = 0, k = 0, reps = 1000;
  std::string x0_spec;
  std::string bandwidth_spec;
  std::uint64_t seed = 42;
  unsigned threads = 0;
  std::string out = "-";
};

struct SelectKOptions {
  InputOptions in;
  std::string x0_spec;
  std::string scale_spec;
  std::size_t rows = 0, cols = 0, k_min = kDefaultKMin, k_max = 0;
  std::size_t split_index = 0;
  std::uint64_t seed = 42;
  std::string out = "-";
};

struct GardesOptions {
  InputOptions in;
  std::string x0_spec;
  std::string bandwidth_spec;
  std::size_t k = 0;
  std::string out = "-";
};

struct DescriptivesOptions {
  InputOptions in;
  std::string prev_col;
  std::size_t bins = 20;
  std::size_t min_count = 40;
  std::string out = "-";
};

PipelineConfig pipeline_config(const EstimateOptions& o) {
  PipelineConfig cfg;
  cfg.i_rows = o.rows;
  cfg.j_cols = o.cols;
  cfg.k = o.k;
  cfg.k_min = o.k_min;
  cfg.k_max = o.k_max;
  cfg.splits = o.splits;
  cfg.master_seed = o.seed;
  if (!o.scale_spec.empty())
    cfg.scale = parse_value_list(o.scale_spec, "--scale");
  cfg.moment_orders = parse_value_list(o.orders_spec, "--moment-orders");
  cfg.level = o.level;
  if (o.test_form == "studentized") {
    cfg.test_form = TestForm::studentized;
  } else if (o.test_form == "as-printed") {
    cfg.test_form = TestForm::as_printed;
  } else {
    fail(Errc::usage, "unknown test form '" + o.test_form + "'");
  }
  cfg.threads = o.threads;
  return cfg;
}

std::string auto_str(std::size_t v) {
  return v == 0 ? std::string("auto") : std::to_string(v);
}

void run_estimate(const EstimateOptions& o) {
  const LoadedInput loaded = load_input(o.in, false);
  const PipelineConfig cfg = pipeline_config(o);
  const auto grid = parse_x0_grid(o.x0_spec, loaded.data.dim);
  if (grid.empty()) fail(Errc::usage, "--x0 resolved to no points");

  std::cerr << "estimate: points=" << grid.size() << " rows=" << auto_str(o.rows)
            << " cols=" << auto_str(o.cols) << " k=" << auto_str(o.k)
            << " k_min=" << o.k_min << " k_max=" << auto_str(o.k_max)
            << " splits=" << o.splits << " seed=" << o.seed
            << " level=" << format_number(o.level) << " form=" << o.test_form
            << "\n";

  EstimateReportInput rep;
  rep.config = cfg;
  rep.input_description = o.in.input;
  rep.y_column = loaded.y_label;
  rep.x_columns = loaded.data.x_names;
  rep.filters = loaded.filters_applied;

  std::optional<Error> last_error;
  for (const auto& point : grid) {
    try {
      rep.estimates.push_back(
          estimate_conditional_alpha(loaded.data, point, cfg));
    } catch (const Error& e) {
      rep.warnings.push_back("x0=" + format_point(point) + ": " +
                             errc_name(e.code()) + ": " + e.what());
      last_error = e;
    }
  }
  if (rep.estimates.empty() && last_error) throw *last_error;
  for (const std::string& w : rep.warnings) std::cerr << "warning: " << w << "\n";

  if (o.format == "json") {
    write_output(o.out, estimate_report_json(rep));
  } else if (o.format == "csv") {
    write_output(o.out, estimate_report_csv(rep));
  } else {
    fail(Errc::usage, "unknown format '" + o.format + "'");
  }
}

void run_simulate(const SimulateOptions& o) {
  const Design design = Design::from_id(o.design);
  if (o.estimator == "nn") {
    if (o.rows == 0 || o.cols == 0)
      fail(Errc::usage, "--rows and --cols are required for --estimator nn");
    if (o.k == 0) fail(Errc::usage, "--k is required");
    if (!o.bandwidth_spec.empty())
      fail(Errc::usage, "--bandwidth only applies to --estimator gardes");
    const auto x0s = parse_value_list(o.x0_spec, "--x0");
    std::cerr << "simulate: design=" << o.design << " rows=" << o.rows
              << " cols=" << o.cols << " k=" << o.k << " reps=" << o.reps
              << " seed=" << o.seed << " points=" << x0s.size() << "\n";
    const auto cells = run_monte_carlo(design, o.rows, o.cols, o.k, x0s,
                                       o.reps, o.seed, o.threads);
    write_output(o.out, simulation_csv(cells));
  } else if (o.estimator == "gardes") {
    if (o.n == 0) fail(Errc::usage, "--n is required for --estimator gardes");
    if (o.k == 0) fail(Errc::usage, "--k is required");
    if (o.rows != 0 || o.cols != 0)
      fail(Errc::usage, "--rows/--cols only apply to --estimator nn");
    const auto x0s = parse_value_list(o.x0_spec, "--x0");
    if (x0s.size() != 1)
      fail(Errc::usage, "--estimator gardes wants a single --x0");
    const auto bandwidths =
        parse_value_list(o.bandwidth_spec, "--bandwidth");
    std::cerr << "simulate: design=" << o.design << " n=" << o.n
              << " k=" << o.k << " reps=" << o.reps << " seed=" << o.seed
              << " bandwidths=" << bandwidths.size() << "\n";
    const auto cells = run_monte_carlo_gardes(design, o.n, o.k, x0s[0],
                                              bandwidths, o.reps, o.seed,
                                              o.threads);
    write_output(o.out, gardes_simulation_csv(cells));
  } else {
    fail(Errc::usage, "unknown estimator '" + o.estimator + "'");
  }
}

void run_select_k(const SelectKOptions& o) {
  const LoadedInput loaded = load_input(o.in, false);
  const auto grid = parse_x0_grid(o.x0_spec, loaded.data.dim);
  if (grid.size() != 1) fail(Errc::usage, "select-k wants a single --x0");
  std::vector<double> scale;
  if (!o.scale_spec.empty()) scale = parse_value_list(o.scale_spec, "--scale");

  const ObservationGrid obs = split_into_grid(
      loaded.data, o.rows, o.cols, split_seed(o.seed, o.split_index));
  const LocalTailSample local = extract_local_sample(obs, grid[0], scale);
  const std::size_t k_max = o.k_max == 0 ? default_k_max(obs.rows) : o.k_max;
  const KSelection sel = select_k(local, o.k_min, k_max);

  std::cerr << "select-k: split=" << o.split_index << " rows=" << obs.rows
            << " cols=" << obs.cols << " range=[" << o.k_min << "," << k_max
            << "] k_star=" << sel.k_star
            << (sel.fallback_used ? " (fallback)" : "") << "\n";
  write_output(o.out, k_selection_csv(sel));
}

void run_gardes(const GardesOptions& o) {
  const LoadedInput loaded = load_input(o.in, false);
  if (loaded.data.dim != 1)
    fail(Errc::usage, "the bandwidth baseline conditions on one column");
  const auto grid = parse_x0_grid(o.x0_spec, 1);
  if (grid.size() != 1) fail(Errc::usage, "baseline-gardes wants a single --x0");
  if (o.k == 0) fail(Errc::usage, "--k is required");
  const auto bandwidths = parse_value_list(o.bandwidth_spec, "--bandwidth");

  std::vector<BandwidthEstimate> estimates;
  estimates.reserve(bandwidths.size());
  for (double b : bandwidths)
    estimates.push_back(
        gardes_estimate(loaded.data.y, loaded.data.x, grid[0][0], b, o.k));

  std::cerr << "baseline-gardes: x0=" << format_number(grid[0][0])
            << " k=" << o.k << " bandwidths=" << bandwidths.size() << "\n";
  write_output(o.out, bandwidth_csv(estimates));
}

void run_descriptives(const DescriptivesOptions& o) {
  std::vector<double> y;
  std::vector<double> prev;
  if (o.in.panel) {
    const LoadedInput loaded = load_input(o.in, true);
    y = loaded.data.y;
    prev = loaded.base_earnings;
  } else {
    if (o.prev_col.empty())
      fail(Errc::usage, "--prev is required without --panel");
    InputOptions in = o.in;
    in.x_spec = o.prev_col;
    const LoadedInput loaded = load_input(in, false);
    if (loaded.data.dim != 1)
      fail(Errc::usage, "--prev wants a single column");
    y = loaded.data.y;
    prev = loaded.data.x;
  }
  const auto rows = binned_descriptives(y, prev, o.bins, o.min_count);
  std::cerr << "descriptives: " << y.size() << " rows into " << o.bins
            << " bins\n";
  write_output(o.out, descriptives_csv(rows));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional tail exponent estimation for growth-rate data"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.failure_message([](const CLI::App*, const CLI::Error& e) {
    return std::string("error: category=usage: ") + e.what() + "\n";
  });

  EstimateOptions est;
  auto* estimate = app.add_subcommand(
      "estimate", "Split-aggregated conditional tail exponent at --x0");
  add_input_options(estimate, est.in, true);
  estimate->add_option("--x0", est.x0_spec,
                       "Conditioning points: values or start:stop:step; "
                       "';'-separated tuples when --x has several columns")
      ->required();
  estimate->add_option("--rows", est.rows, "Array rows (0 = sqrt of N)");
  estimate->add_option("--cols", est.cols, "Array columns (0 = sqrt of N)");
  estimate->add_option("--k", est.k, "Tail count (0 = per-split selection)");
  estimate->add_option("--k-min", est.k_min, "Selection lower bound")
      ->capture_default_str();
  estimate->add_option("--k-max", est.k_max,
                       "Selection upper bound (0 = rows/2 - 1)");
  estimate->add_option("--splits", est.splits, "Number of random splits")
      ->capture_default_str();
  estimate->add_option("--seed", est.seed, "Master seed")
      ->capture_default_str();
  estimate->add_option("--scale", est.scale_spec,
                       "Comma-separated per-coordinate distance weights");
  estimate->add_option("--moment-orders", est.orders_spec,
                       "Orders r for the finite-moment tests")
      ->capture_default_str();
  estimate->add_option("--level", est.level, "Test size")
      ->capture_default_str();
  estimate->add_option("--test-form", est.test_form,
                       "studentized or as-printed decision statistic")
      ->capture_default_str()
      ->check(CLI::IsMember({"studentized", "as-printed"}));
  estimate->add_option("--threads", est.threads,
                       "Worker threads (0 = all cores)");
  estimate->add_option("--out", est.out, "Output path ('-' = stdout)")
      ->capture_default_str();
  estimate->add_option("--format", est.format, "json or csv")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "csv"}));
  estimate->callback([&] { run_estimate(est); });

  SimulateOptions sim;
  auto* simulate = app.add_subcommand(
      "simulate", "Monte Carlo bias/SD/coverage tables on the two designs");
  simulate->add_option("--design", sim.design, "1 (linear) or 2 (quadratic)")
      ->required();
  simulate->add_option("--estimator", sim.estimator,
                       "nn (array estimator) or gardes (bandwidth baseline)")
      ->capture_default_str()
      ->check(CLI::IsMember({"nn", "gardes"}));
  simulate->add_option("--rows", sim.rows, "Array rows (nn)");
  simulate->add_option("--cols", sim.cols, "Array columns (nn)");
  simulate->add_option("--n", sim.n, "Flat sample size (gardes)");
  simulate->add_option("--k", sim.k, "Tail count")->required();
  simulate->add_option("--x0", sim.x0_spec, "Conditioning points")
      ->required();
  simulate->add_option("--bandwidth", sim.bandwidth_spec,
                       "Bandwidths (gardes)");
  simulate->add_option("--reps", sim.reps, "Replications")
      ->capture_default_str();
  simulate->add_option("--seed", sim.seed, "Master seed")
      ->capture_default_str();
  simulate->add_option("--threads", sim.threads,
                       "Worker threads (0 = all cores)");
  simulate->add_option("--out", sim.out, "Output path ('-' = stdout)")
      ->capture_default_str();
  simulate->callback([&] { run_simulate(sim); });

  SelectKOptions sel;
  auto* select = app.add_subcommand(
      "select-k", "Threshold-count diagnostics for one split");
  add_input_options(select, sel.in, true);
  select->add_option("--x0", sel.x0_spec, "Single conditioning point")
      ->required();
  select->add_option("--rows", sel.rows, "Array rows (0 = sqrt of N)");
  select->add_option("--cols", sel.cols, "Array columns (0 = sqrt of N)");
  select->add_option("--k-min", sel.k_min, "Candidate lower bound")
      ->capture_default_str();
  select->add_option("--k-max", sel.k_max,
                     "Candidate upper bound (0 = rows/2 - 1)");
  select->add_option("--split", sel.split_index,
                     "Which split's array to inspect")
      ->capture_default_str();
  select->add_option("--seed", sel.seed, "Master seed")
      ->capture_default_str();
  select->add_option("--scale", sel.scale_spec,
                     "Comma-separated per-coordinate distance weights");
  select->add_option("--out", sel.out, "Output path ('-' = stdout)")
      ->capture_default_str();
  select->callback([&] { run_select_k(sel); });

  GardesOptions gar;
  auto* gardes = app.add_subcommand(
      "baseline-gardes", "Bandwidth-selection baseline estimate");
  add_input_options(gardes, gar.in, true);
  gardes->add_option("--x0", gar.x0_spec, "Single conditioning point")
      ->required();
  gardes->add_option("--bandwidth", gar.bandwidth_spec,
                     "Bandwidths to evaluate ('inf' = full sample)")
      ->required();
  gardes->add_option("--k", gar.k, "Tail count")->required();
  gardes->add_option("--out", gar.out, "Output path ('-' = stdout)")
      ->capture_default_str();
  gardes->callback([&] { run_gardes(gar); });

  DescriptivesOptions des;
  auto* descriptives = app.add_subcommand(
      "descriptives", "Dispersion and shape statistics by base-earnings bin");
  add_input_options(descriptives, des.in, false);
  descriptives->add_option("--prev", des.prev_col,
                           "Base-value column to bin on (without --panel)");
  descriptives->add_option("--bins", des.bins, "Number of quantile bins")
      ->capture_default_str();
  descriptives->add_option("--min-count", des.min_count,
                           "Flag bins smaller than this")
      ->capture_default_str();
  descriptives->add_option("--out", des.out, "Output path ('-' = stdout)")
      ->capture_default_str();
  descriptives->callback([&] { run_descriptives(des); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const tailrisk::Error& e) {
    std::cerr << "error: category=" << errc_name(e.code()) << ": " << e.what()
              << "\n";
    return e.code() == Errc::usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: category=internal: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
