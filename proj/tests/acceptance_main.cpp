// Acceptance gate. Each invocation runs one numbered criterion end to end,
// prints an [ok]/[FAIL] line per assertion, and ends with
// "criterion N: PASS|FAIL". Exit status 0 iff every assertion held.
//
// Reference bias/SD/coverage tables below are pinned from an independent
// implementation run of the same designs; tolerances combine the Monte Carlo
// error of both runs (3 sigma) so agreement is a statement about the
// estimator, not about shared code. Criteria 8 and 9 drive the installed CLI
// binary (path via --cli) through std::system.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tailrisk/array_builder.hpp"
#include "tailrisk/baselines.hpp"
#include "tailrisk/csv.hpp"
#include "tailrisk/dataset.hpp"
#include "tailrisk/error.hpp"
#include "tailrisk/hill.hpp"
#include "tailrisk/inference.hpp"
#include "tailrisk/k_selection.hpp"
#include "tailrisk/rng.hpp"
#include "tailrisk/simulation.hpp"

namespace {

using namespace tailrisk;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Checker {
  int failed = 0;

  void check(bool ok, const std::string& what) {
    if (!ok) ++failed;
    std::cout << (ok ? "[ok] " : "[FAIL] ") << what << "\n";
  }

  void note(const std::string& what) { std::cout << "[info] " << what << "\n"; }
};

std::string fmt(double v, int prec = 6) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

// ---- sampling summaries ----------------------------------------------------

struct SampleStats {
  std::size_t valid = 0;
  std::size_t failures = 0;
  double mean = kNaN;
  double sd = kNaN;
  double m4 = kNaN;  // central fourth moment
  double coverage = kNaN;
};

// NaN entries are failed replications; coverage uses the same two-sided 95%
// interval convention as the simulation summaries.
SampleStats collect_stats(const std::vector<double>& alphas, std::size_t k,
                          double alpha_true) {
  SampleStats st;
  double sum = 0.0;
  for (double a : alphas) {
    if (std::isfinite(a)) {
      ++st.valid;
      sum += a;
    } else {
      ++st.failures;
    }
  }
  if (st.valid == 0) return st;
  st.mean = sum / static_cast<double>(st.valid);

  double m2 = 0.0, m4 = 0.0;
  std::size_t covered = 0;
  for (double a : alphas) {
    if (!std::isfinite(a)) continue;
    const double d = a - st.mean;
    m2 += d * d;
    m4 += d * d * d * d;
    const ConfidenceBound ci = confidence_bounds(a, a, k, 0.95, false);
    if (ci.lower && ci.upper && *ci.lower <= alpha_true &&
        alpha_true <= *ci.upper) {
      ++covered;
    }
  }
  st.sd = st.valid > 1 ? std::sqrt(m2 / static_cast<double>(st.valid - 1)) : 0.0;
  st.m4 = m4 / static_cast<double>(st.valid);
  st.coverage = static_cast<double>(covered) / static_cast<double>(st.valid);
  return st;
}

// Both runs are Monte Carlo; the reference used 1000 replications.
double bias_tolerance(double sd_ours, std::size_t reps_ours, double sd_ref) {
  return 3.0 * std::sqrt(sd_ours * sd_ours / static_cast<double>(reps_ours) +
                         sd_ref * sd_ref / 1000.0);
}

// Normal-theory standard error of a sample SD, doubled in variance for the
// reference run's own noise.
double sd_tolerance(double sd, double m4, std::size_t reps) {
  const double var_sd = std::max(
      0.0, (m4 - sd * sd * sd * sd) / (4.0 * sd * sd * static_cast<double>(reps)));
  return 3.0 * std::sqrt(2.0 * var_sd);
}

double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t n = a.size();
  double ma = 0.0, mb = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= static_cast<double>(n);
  mb /= static_cast<double>(n);
  double saa = 0.0, sbb = 0.0, sab = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
    sab += (a[i] - ma) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

// ---- criteria 1 and 2: array estimator vs pinned reference tables ----------

struct RefCell {
  std::size_t k = 0;
  double x0 = 0.0;
  double bias = 0.0;
  double sd = 0.0;
  double cover = 0.0;
};

void check_nn_design(Checker& c, int design_id,
                     const std::vector<std::size_t>& ks,
                     const std::vector<double>& x0s,
                     const std::vector<RefCell>& refs) {
  constexpr std::size_t kReps = 1000;
  const Design design = Design::from_id(design_id);
  const ReplicationMatrix mat =
      run_replications(design, 500, 500, ks, x0s, kReps, 42);

  for (const RefCell& ref : refs) {
    const std::size_t ki = static_cast<std::size_t>(
        std::find(ks.begin(), ks.end(), ref.k) - ks.begin());
    const std::size_t xi = static_cast<std::size_t>(
        std::find(x0s.begin(), x0s.end(), ref.x0) - x0s.begin());
    std::vector<double> alphas(kReps);
    for (std::size_t rep = 0; rep < kReps; ++rep) {
      alphas[rep] = mat.at(rep, xi, ki);
    }
    const double alpha_true = true_alpha(design, ref.x0);
    const SampleStats st = collect_stats(alphas, ref.k, alpha_true);
    const std::string tag = "design " + std::to_string(design_id) +
                            " k=" + std::to_string(ref.k) +
                            " x0=" + fmt(ref.x0);
    if (st.failures > 0) {
      c.note(tag + ": " + std::to_string(st.failures) + " failed replications");
    }

    const double bias = st.mean - alpha_true;
    const double btol = bias_tolerance(st.sd, st.valid, ref.sd);
    c.check(std::abs(bias - ref.bias) <= btol,
            tag + ": bias " + fmt(bias) + " vs reference " + fmt(ref.bias) +
                " (tol " + fmt(btol) + ")");
    const double stol = sd_tolerance(st.sd, st.m4, st.valid);
    c.check(std::abs(st.sd - ref.sd) <= stol,
            tag + ": sd " + fmt(st.sd) + " vs reference " + fmt(ref.sd) +
                " (tol " + fmt(stol) + ")");
    c.check(std::abs(st.coverage - ref.cover) <= 0.02,
            tag + ": coverage " + fmt(st.coverage) + " vs reference " +
                fmt(ref.cover) + " (tol 0.02)");
  }
}

void criterion_1(Checker& c) {
  check_nn_design(c, 1, {10, 20}, {0.1, 0.5, 0.9},
                  {{10, 0.1, 0.221, 0.759, 0.948},
                   {10, 0.5, 0.614, 2.178, 0.963},
                   {10, 0.9, 1.069, 4.002, 0.949},
                   {20, 0.1, 0.121, 0.512, 0.949},
                   {20, 0.5, 0.262, 1.448, 0.959},
                   {20, 0.9, 0.519, 2.568, 0.943}});
}

void criterion_2(Checker& c) {
  check_nn_design(c, 2, {20}, {0.1, 0.6, 0.9},
                  {{20, 0.1, 0.523, 2.266, 0.958},
                   {20, 0.6, 0.335, 1.784, 0.947},
                   {20, 0.9, 0.527, 2.252, 0.953}});
}

// ---- criterion 3: bandwidth baseline bias/coverage profile -----------------

void criterion_3(Checker& c) {
  constexpr std::size_t kReps = 1000;
  const Design design = Design::from_id(1);
  const std::vector<double> bands = {0.01, 0.025, 0.05, 0.2};
  // Reference: bias, sd, coverage per bandwidth at n=250000, k=20, x0=0.5.
  const std::vector<RefCell> refs = {{20, 0.01, 0.284, 1.482, 0.952},
                                     {20, 0.025, 0.334, 1.549, 0.950},
                                     {20, 0.05, 0.118, 1.453, 0.937},
                                     {20, 0.2, -1.269, 1.086, 0.656}};
  const GardesReplicationMatrix mat =
      run_gardes_replications(design, 250000, 20, 0.5, bands, kReps, 42);
  const double alpha_true = true_alpha(design, 0.5);

  std::vector<double> coverages(bands.size(), kNaN);
  for (std::size_t bi = 0; bi < bands.size(); ++bi) {
    std::vector<double> alphas(kReps);
    for (std::size_t rep = 0; rep < kReps; ++rep) alphas[rep] = mat.at(rep, bi);
    const SampleStats st = collect_stats(alphas, 20, alpha_true);
    coverages[bi] = st.coverage;
    const std::string tag = "bandwidth " + fmt(bands[bi]);
    if (st.failures > 0) {
      c.note(tag + ": " + std::to_string(st.failures) + " failed replications");
    }
    const double bias = st.mean - alpha_true;
    const double btol = bias_tolerance(st.sd, st.valid, refs[bi].sd);
    c.check(std::abs(bias - refs[bi].bias) <= btol,
            tag + ": bias " + fmt(bias) + " vs reference " + fmt(refs[bi].bias) +
                " (tol " + fmt(btol) + ")");
    c.check(std::abs(st.coverage - refs[bi].cover) <= 0.02,
            tag + ": coverage " + fmt(st.coverage) + " vs reference " +
                fmt(refs[bi].cover) + " (tol 0.02)");
  }
  // Oversmoothing must show up as a coverage collapse at the widest bandwidth.
  c.check(coverages.front() - coverages.back() >= 0.10,
          "coverage gap narrow-minus-wide " +
              fmt(coverages.front() - coverages.back()) + " >= 0.10");
  c.check(coverages[0] >= 0.93 && coverages[1] >= 0.93 && coverages[2] >= 0.93,
          "coverage at the three narrow bandwidths stays above 0.93");
  c.check(coverages[3] <= 0.80,
          "coverage at bandwidth 0.2 collapses below 0.80 (got " +
              fmt(coverages[3]) + ")");

  // Context for the pinned +-0.02 coverage bands: at 1000 replications each
  // side has binomial standard error about 0.007, so the band is roughly two
  // combined standard errors wide and a single cell can miss it on Monte
  // Carlo noise alone. A 4000-replication repeat on fresh streams pins this
  // implementation's coverage to +-0.004 per bandwidth for diagnosis.
  const GardesReplicationMatrix wide =
      run_gardes_replications(design, 250000, 20, 0.5, bands, 4000, 1337);
  for (std::size_t bi = 0; bi < bands.size(); ++bi) {
    std::vector<double> alphas(wide.reps);
    for (std::size_t rep = 0; rep < wide.reps; ++rep) {
      alphas[rep] = wide.at(rep, bi);
    }
    const SampleStats st = collect_stats(alphas, 20, alpha_true);
    c.note("high-replication coverage at bandwidth " + fmt(bands[bi]) + ": " +
           fmt(st.coverage) + " (4000 reps, SE ~0.004)");
  }
}

// ---- criteria 4 and 6: unconditional Hill sampling law ---------------------

// 2000 independent exact-Pareto samples, n=10000, K=200.
std::vector<double> hill_alphas_pareto(double alpha, std::uint64_t key) {
  constexpr std::size_t kReps = 2000;
  constexpr std::size_t kN = 10000;
  std::vector<double> out(kReps);
  std::vector<double> y(kN);
  for (std::size_t rep = 0; rep < kReps; ++rep) {
    RngStream g = RngStream::derive(42, {key, rep});
    for (std::size_t i = 0; i < kN; ++i) y[i] = sample_pareto(alpha, g);
    std::sort(y.begin(), y.end(), std::greater<>());
    out[rep] = hill_alpha(y, 200).alpha_hat;
  }
  return out;
}

void criterion_4(Checker& c) {
  constexpr double kAlpha = 2.0;
  constexpr std::size_t kK = 200;
  const std::vector<double> alphas = hill_alphas_pareto(kAlpha, 401);
  const std::size_t reps = alphas.size();

  double mean = 0.0;
  for (double a : alphas) mean += a;
  mean /= static_cast<double>(reps);
  double var = 0.0;
  for (double a : alphas) var += (a - mean) * (a - mean);
  var /= static_cast<double>(reps - 1);
  const double se_mean = std::sqrt(var / static_cast<double>(reps));

  // As specified: the sample mean must sit within 2 standard errors of the
  // asymptotic value 2.0. The estimator's exact finite-sample mean at K=200
  // is alpha*K/(K-1) = 2.01005..., about 3.2 standard errors above 2.0, so
  // this assertion contradicts the exact sampling law and is expected to
  // fail for a correct implementation. It is kept as stated; the next line
  // reports agreement with the exact law for diagnosis.
  c.check(std::abs(mean - kAlpha) <= 2.0 * se_mean,
          "mean " + fmt(mean, 8) + " within 2 SE (" + fmt(2.0 * se_mean, 4) +
              ") of 2.0");
  const double exact_mean =
      kAlpha * static_cast<double>(kK) / static_cast<double>(kK - 1);
  c.note("exact finite-sample mean at K=200 is " + fmt(exact_mean, 8) +
         "; observed " + fmt(mean, 8) + " (SE " + fmt(se_mean, 4) + ")");
  c.check(std::abs(mean - exact_mean) <= 3.0 * se_mean,
          "mean within 3 SE of the exact finite-sample value " +
              fmt(exact_mean, 8));

  // Variance of the normalized error sqrt(K)(alpha_hat - alpha)/alpha; the
  // exact value at K=200 is K^3/((K-1)^2 (K-2)) = 1.0203.
  double pivot_var = 0.0;
  double pivot_mean = 0.0;
  std::vector<double> pivots(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    pivots[i] = std::sqrt(static_cast<double>(kK)) * (alphas[i] - kAlpha) / kAlpha;
    pivot_mean += pivots[i];
  }
  pivot_mean /= static_cast<double>(reps);
  for (double p : pivots) pivot_var += (p - pivot_mean) * (p - pivot_mean);
  pivot_var /= static_cast<double>(reps - 1);
  c.check(pivot_var >= 0.9 && pivot_var <= 1.1,
          "normalized-error variance " + fmt(pivot_var) +
              " in [0.9, 1.1] (exact value 1.0203)");
}

void criterion_6(Checker& c) {
  const std::vector<double> alphas = hill_alphas_pareto(3.0, 601);
  std::size_t rejections = 0;
  for (double a : alphas) {
    if (moment_test(a, a, 200, 3.0, 0.05).reject) ++rejections;
  }
  const double rate =
      static_cast<double>(rejections) / static_cast<double>(alphas.size());
  // Boundary null alpha = r = 3: the exact size at K=200 is 0.0539.
  c.check(rate >= 0.03 && rate <= 0.07,
          "moment-test rejection rate " + fmt(rate) +
              " in [0.03, 0.07] at the boundary null (exact size 0.0539)");
}

// ---- criterion 5: cross-point dependence ------------------------------------

void criterion_5(Checker& c) {
  constexpr std::size_t kReps = 1000;
  const Design design = Design::from_id(1);
  const std::vector<std::size_t> ks = {20};
  const std::vector<double> x0s = {0.3, 0.7};
  const ReplicationMatrix mat =
      run_replications(design, 500, 500, ks, x0s, kReps, 42);

  std::vector<double> a0, a1;
  a0.reserve(kReps);
  a1.reserve(kReps);
  for (std::size_t rep = 0; rep < kReps; ++rep) {
    const double u = mat.at(rep, 0, 0);
    const double v = mat.at(rep, 1, 0);
    if (std::isfinite(u) && std::isfinite(v)) {
      a0.push_back(u);
      a1.push_back(v);
    }
  }
  c.note(std::to_string(a0.size()) + " replications with both points finite");
  const double rho = pearson(a0, a1);
  // Estimates at distinct conditioning points share a grid per replication
  // but draw on disjoint neighborhoods; under independence |rho| has SE
  // about 0.032, so 0.1 is a three-sigma bar.
  c.check(std::abs(rho) < 0.1,
          "cross-point correlation |" + fmt(rho) + "| < 0.1");
}

// ---- criterion 7: agreement with independent re-implementations ------------

void criterion_7a(Checker& c) {
  constexpr std::size_t kTrials = 200;
  std::size_t bad_pairing = 0, bad_values = 0, bad_dists = 0, bad_order = 0;
  std::string first_failure;

  for (std::size_t t = 0; t < kTrials; ++t) {
    RngStream g = RngStream::derive(42, {701, t});
    const std::size_t dim = 1 + g.next_below(3);
    const std::size_t rows = 2 + g.next_below(29);
    const std::size_t cols = 1 + g.next_below(20);
    const std::size_t n =
        std::max<std::size_t>(4, rows * cols + g.next_below(5));

    Dataset data;
    data.dim = dim;
    data.y.resize(n);
    data.x.resize(n * dim);
    for (std::size_t i = 0; i < n; ++i) {
      data.y[i] = 1.0 + 9.0 * g.next_double();
      for (std::size_t d = 0; d < dim; ++d) {
        data.x[i * dim + d] = 2.0 * g.next_double() - 0.5;
      }
    }

    std::vector<double> x0(dim);
    for (std::size_t d = 0; d < dim; ++d) x0[d] = 2.0 * g.next_double() - 0.5;
    if (t % 4 == 0) {
      // Exercise exact-hit and tie handling by conditioning on a record.
      const std::size_t r = g.next_below(n);
      for (std::size_t d = 0; d < dim; ++d) x0[d] = data.x[r * dim + d];
    }
    std::vector<double> scale;
    if (t % 3 == 0) {
      scale.resize(dim);
      for (std::size_t d = 0; d < dim; ++d) scale[d] = 0.25 + 4.0 * g.next_double();
    }

    const std::uint64_t grid_seed = g.next_u64();
    const ObservationGrid grid = split_into_grid(data, rows, cols, grid_seed);
    const LocalTailSample sample = extract_local_sample(grid, x0, scale);

    // Every grid cell must be a distinct dataset record, coordinates intact.
    std::vector<bool> used(n, false);
    bool pairing_ok = true;
    for (std::size_t cidx = 0; cidx < rows * cols && pairing_ok; ++cidx) {
      bool matched = false;
      for (std::size_t r = 0; r < n; ++r) {
        if (used[r] || data.y[r] != grid.y[cidx]) continue;
        bool same = true;
        for (std::size_t d = 0; d < dim; ++d) {
          if (data.x[r * dim + d] != grid.x[cidx * dim + d]) same = false;
        }
        if (same) {
          used[r] = true;
          matched = true;
          break;
        }
      }
      if (!matched) pairing_ok = false;
    }
    if (!pairing_ok) ++bad_pairing;

    // Brute-force nearest neighbor per row. The distance arithmetic mirrors
    // the library's evaluation order so agreement is exact; the scan itself
    // is an independent pass over the row.
    std::vector<double> want_values(rows), want_dists(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      double best = kInf;
      std::size_t best_j = 0;
      for (std::size_t j = 0; j < cols; ++j) {
        double d;
        if (dim == 1 && scale.empty()) {
          d = std::abs(grid.x[i * cols + j] - x0[0]);
        } else {
          double d2 = 0.0;
          for (std::size_t dd = 0; dd < dim; ++dd) {
            double step = grid.x[(i * cols + j) * dim + dd] - x0[dd];
            if (!scale.empty()) step *= scale[dd];
            d2 += step * step;
          }
          d = d2;
        }
        if (d < best) {
          best = d;
          best_j = j;
        }
      }
      want_values[i] = grid.y[i * cols + best_j];
      want_dists[i] =
          (dim == 1 && scale.empty()) ? best : std::sqrt(best);
    }

    bool dists_ok = sample.nn_distances.size() == rows;
    for (std::size_t i = 0; dists_ok && i < rows; ++i) {
      if (sample.nn_distances[i] != want_dists[i]) dists_ok = false;
    }
    if (!dists_ok) ++bad_dists;

    std::sort(want_values.begin(), want_values.end(), std::greater<>());
    bool values_ok = sample.values.size() == rows;
    for (std::size_t i = 0; values_ok && i < rows; ++i) {
      if (sample.values[i] != want_values[i]) values_ok = false;
    }
    if (!values_ok) ++bad_values;

    bool order_ok = true;
    for (std::size_t i = 1; i < sample.values.size(); ++i) {
      if (sample.values[i - 1] < sample.values[i]) order_ok = false;
    }
    if (!order_ok) ++bad_order;

    if (first_failure.empty() &&
        (!pairing_ok || !dists_ok || !values_ok || !order_ok)) {
      first_failure = "trial " + std::to_string(t) + " dim=" +
                      std::to_string(dim) + " rows=" + std::to_string(rows) +
                      " cols=" + std::to_string(cols);
    }
  }

  c.check(bad_pairing == 0, "grid cells match dataset records in all 200 trials");
  c.check(bad_values == 0,
          "induced samples equal the brute-force scan in all 200 trials");
  c.check(bad_dists == 0,
          "nearest-neighbor distances equal the brute-force scan in all 200 trials");
  c.check(bad_order == 0, "induced samples sorted descending in all 200 trials");
  if (!first_failure.empty()) c.note("first mismatch at " + first_failure);
}

void criterion_7b(Checker& c) {
  std::size_t mismatches = 0;
  for (std::size_t t = 0; t < 20; ++t) {
    RngStream g = RngStream::derive(42, {702, t});
    const std::size_t n = 50 + g.next_below(951);
    const double alpha = 0.5 + 4.0 * g.next_double();
    std::vector<double> y(n), x(n);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = g.next_double();
      y[i] = sample_pareto(alpha, g);
    }
    const std::size_t k = 5 + g.next_below(std::min<std::uint64_t>(n - 6, 100));
    const double x0 = g.next_double();

    const BandwidthEstimate b = gardes_estimate(y, x, x0, kInf, k);
    std::vector<double> desc = y;
    std::sort(desc.begin(), desc.end(), std::greater<>());
    const TailEstimate h = hill_alpha(desc, k);

    if (b.alpha_hat != h.alpha_hat || b.xi_hat != h.xi_hat ||
        b.se_alpha != h.se_alpha ||
        b.order_stat_threshold != h.order_stat_threshold || b.k_used != k ||
        b.n_selected != n) {
      ++mismatches;
    }
  }
  c.check(mismatches == 0,
          "infinite-bandwidth baseline equals the plain tail estimate bit for "
          "bit in all 20 trials");
}

// Independent threshold-count scan: prefix-sum spacings, closed-form weight
// norm, and a suffix-flag selection pass.
struct OracleScan {
  std::vector<double> t, c;
  std::size_t k_star = 0;
  bool fallback = false;
};

OracleScan oracle_scan(const std::vector<double>& desc, std::size_t k_min,
                       std::size_t k_max) {
  const std::size_t m = k_max - k_min + 1;
  OracleScan o;
  o.t.resize(m);
  o.c.resize(m);
  std::vector<double> lg(k_max + 1);
  for (std::size_t i = 0; i <= k_max; ++i) lg[i] = std::log(desc[i]);

  for (std::size_t k = k_min; k <= k_max; ++k) {
    double weighted = 0.0, zsum = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      const double z = static_cast<double>(i) * (lg[i - 1] - lg[i]);
      weighted += (static_cast<double>(k) - 2.0 * static_cast<double>(i) + 1.0) * z;
      zsum += z;
    }
    const double xi = zsum / static_cast<double>(k);  // telescoped tail index
    const double kk = static_cast<double>(k);
    const double norm = std::sqrt(kk * (kk * kk - 1.0) / 3.0);
    o.t[k - k_min] = weighted / (norm * xi);
  }
  for (std::size_t k = k_min; k <= k_max; ++k) {
    const std::size_t lo = std::max(k - k / 2, k_min);
    const std::size_t hi = std::min(k + k / 2, k_max);
    double sum = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) {
      sum += o.t[j - k_min] * o.t[j - k_min];
    }
    o.c[k - k_min] = std::sqrt(sum / static_cast<double>(hi - lo + 1));
  }
  std::vector<char> tail_clear(m, 0);
  for (std::size_t idx = m; idx-- > 0;) {
    const bool above = o.c[idx] > 1.0;
    tail_clear[idx] = above && (idx + 1 == m || tail_clear[idx + 1]);
  }
  o.fallback = true;
  o.k_star = k_max;
  for (std::size_t idx = 0; idx < m; ++idx) {
    if (tail_clear[idx]) {
      o.k_star = k_min + idx;
      o.fallback = false;
      break;
    }
  }
  return o;
}

void criterion_7c(Checker& c) {
  constexpr std::size_t kTrials = 50;
  std::size_t bad_stats = 0, bad_choice = 0;
  std::string first_failure;
  for (std::size_t t = 0; t < kTrials; ++t) {
    RngStream g = RngStream::derive(42, {703, t});
    const std::size_t n = 60 + g.next_below(400);
    const double alpha = 0.8 + 4.0 * g.next_double();
    std::vector<double> y(n);
    for (double& v : y) v = sample_pareto(alpha, g);
    std::sort(y.begin(), y.end(), std::greater<>());
    const std::size_t k_min = 5;
    const std::size_t k_max =
        std::min<std::size_t>(n - 1, 6 + g.next_below(n / 2));

    const KSelection sel = select_k(std::span<const double>(y), k_min, k_max);
    const OracleScan oracle = oracle_scan(y, k_min, k_max);

    bool stats_ok = sel.diagnostics.size() == oracle.t.size();
    for (std::size_t i = 0; stats_ok && i < oracle.t.size(); ++i) {
      const double tt = oracle.t[i], cc = oracle.c[i];
      if (std::abs(sel.diagnostics[i].t_stat - tt) >
              1e-9 * std::max(1.0, std::abs(tt)) ||
          std::abs(sel.diagnostics[i].c_stat - cc) >
              1e-9 * std::max(1.0, std::abs(cc))) {
        stats_ok = false;
      }
    }
    if (!stats_ok) ++bad_stats;
    const bool choice_ok =
        sel.k_star == oracle.k_star && sel.fallback_used == oracle.fallback;
    if (!choice_ok) ++bad_choice;
    if (first_failure.empty() && (!stats_ok || !choice_ok)) {
      first_failure = "trial " + std::to_string(t) + " n=" + std::to_string(n) +
                      " k_max=" + std::to_string(k_max) + ": got k_star=" +
                      std::to_string(sel.k_star) + " want " +
                      std::to_string(oracle.k_star);
    }
  }
  c.check(bad_stats == 0,
          "threshold-count statistics match the independent scan (tol 1e-9) in "
          "all 50 trials");
  c.check(bad_choice == 0,
          "selected threshold count and fallback flag match in all 50 trials");
  if (!first_failure.empty()) c.note("first mismatch at " + first_failure);
}

void criterion_7(Checker& c) {
  criterion_7a(c);
  criterion_7b(c);
  criterion_7c(c);
}

// ---- criteria 8 and 9: the installed CLI ------------------------------------

int run_command(const std::string& cmd) {
  const int rc = std::system(cmd.c_str());
  if (rc == -1) return -1;
  if (WIFEXITED(rc)) return WEXITSTATUS(rc);
  return -2;
}

std::optional<std::string> read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / name;
  std::error_code ec;
  std::filesystem::remove_all(dir, ec);
  std::filesystem::create_directories(dir);
  return dir;
}

// Runs the same subcommand twice (different thread settings) and demands
// byte-identical output files.
void check_repeat(Checker& c, const std::string& label,
                  const std::string& cmd_a, const std::string& cmd_b,
                  const std::filesystem::path& out_a,
                  const std::filesystem::path& out_b) {
  const int ra = run_command(cmd_a);
  const int rb = run_command(cmd_b);
  c.check(ra == 0 && rb == 0, label + ": both runs exit 0 (got " +
                                  std::to_string(ra) + ", " +
                                  std::to_string(rb) + ")");
  const auto ba = read_bytes(out_a);
  const auto bb = read_bytes(out_b);
  const bool equal = ba && bb && !ba->empty() && *ba == *bb;
  c.check(equal, label + ": outputs byte-identical and nonempty (" +
                     (ba ? std::to_string(ba->size()) : std::string("no")) +
                     " bytes)");
}

void criterion_8(Checker& c, const std::string& cli) {
  const auto dir = fresh_dir("tailrisk_acceptance_c8");
  const std::string log = " 2>>" + (dir / "stderr.log").string();

  // Deterministic toy inputs: a flat growth/rank table and a two-period panel.
  {
    RngStream g = RngStream::derive(42, {801});
    std::ofstream out(dir / "data.csv");
    out << "growth,rank\n";
    for (std::size_t i = 0; i < 400; ++i) {
      const double x = g.next_double();
      const double y = 0.05 * pareto_from_uniform(1.0 - g.next_double(), 3.0);
      out << format_number(y) << "," << format_number(x) << "\n";
    }
  }
  {
    RngStream g = RngStream::derive(42, {802});
    std::ofstream out(dir / "panel.csv");
    out << "id,period,earnings\n";
    for (std::size_t i = 0; i < 200; ++i) {
      const double u = g.next_double();
      const double e1 = std::exp(1.0 + 2.0 * u);
      const double z = pareto_from_uniform(1.0 - g.next_double(), 3.0);
      const double e2 = e1 * std::exp((g.next_below(2) ? 0.05 : -0.05) * z);
      out << "p" << i << ",0," << format_number(e1) << "\n";
      out << "p" << i << ",1," << format_number(e2) << "\n";
    }
  }
  const std::string data = (dir / "data.csv").string();
  const std::string panel = (dir / "panel.csv").string();

  const std::string est = cli + " estimate --input " + data +
                          " --y growth --x rank --x0 0.25,0.75 --k 8"
                          " --splits 40 --seed 42";
  check_repeat(c, "estimate json",
               est + " --format json --threads 1 --out " +
                   (dir / "a1.json").string() + log,
               est + " --format json --threads 3 --out " +
                   (dir / "a2.json").string() + log,
               dir / "a1.json", dir / "a2.json");
  check_repeat(c, "estimate csv (thread env)",
               "TAILRISK_THREADS=3 " + est + " --format csv --out " +
                   (dir / "c1.csv").string() + log,
               "TAILRISK_THREADS=1 " + est + " --format csv --out " +
                   (dir / "c2.csv").string() + log,
               dir / "c1.csv", dir / "c2.csv");

  const std::string estp = cli + " estimate --input " + panel +
                           " --panel --base-period 0 --next-period 1"
                           " --x0 0.5 --k 8 --splits 40 --seed 42 --format json";
  check_repeat(c, "estimate panel json",
               estp + " --threads 1 --out " + (dir / "p1.json").string() + log,
               estp + " --threads 3 --out " + (dir / "p2.json").string() + log,
               dir / "p1.json", dir / "p2.json");

  const std::string simnn = cli +
                            " simulate --design 1 --rows 40 --cols 40 --k 10"
                            " --x0 0.3,0.7 --reps 30 --seed 7";
  check_repeat(c, "simulate nn",
               simnn + " --threads 1 --out " + (dir / "s1.csv").string() + log,
               simnn + " --threads 3 --out " + (dir / "s2.csv").string() + log,
               dir / "s1.csv", dir / "s2.csv");

  const std::string simg = cli +
                           " simulate --design 1 --estimator gardes --n 2000"
                           " --k 20 --x0 0.5 --bandwidth 0.1,inf --reps 10"
                           " --seed 7";
  check_repeat(c, "simulate gardes",
               simg + " --threads 1 --out " + (dir / "g1.csv").string() + log,
               simg + " --threads 3 --out " + (dir / "g2.csv").string() + log,
               dir / "g1.csv", dir / "g2.csv");

  const std::string selk = cli + " select-k --input " + data +
                           " --y growth --x rank --x0 0.5 --split 0 --seed 42";
  check_repeat(c, "select-k",
               "TAILRISK_THREADS=1 " + selk + " --out " +
                   (dir / "k1.csv").string() + log,
               "TAILRISK_THREADS=3 " + selk + " --out " +
                   (dir / "k2.csv").string() + log,
               dir / "k1.csv", dir / "k2.csv");

  const std::string gar = cli + " baseline-gardes --input " + data +
                          " --y growth --x rank --x0 0.5 --bandwidth 0.25,inf"
                          " --k 20";
  check_repeat(c, "baseline-gardes",
               "TAILRISK_THREADS=1 " + gar + " --out " +
                   (dir / "b1.csv").string() + log,
               "TAILRISK_THREADS=3 " + gar + " --out " +
                   (dir / "b2.csv").string() + log,
               dir / "b1.csv", dir / "b2.csv");

  const std::string des = cli + " descriptives --input " + data +
                          " --y growth --prev rank --bins 5 --min-count 10";
  check_repeat(c, "descriptives",
               "TAILRISK_THREADS=1 " + des + " --out " +
                   (dir / "d1.csv").string() + log,
               "TAILRISK_THREADS=3 " + des + " --out " +
                   (dir / "d2.csv").string() + log,
               dir / "d1.csv", dir / "d2.csv");
}

void criterion_9(Checker& c, const std::string& cli) {
  const auto dir = fresh_dir("tailrisk_acceptance_c9");
  const std::string log = " 2>>" + (dir / "stderr.log").string();

  // Synthetic two-period panel, 80000 workers. The growth magnitude is
  // 0.1 * Z with Z unit Pareto of exponent 1 + 10u, and the base earnings
  // are strictly increasing in u, so the exponent conditional on the base
  // earnings rank x is 1 + 10x. Age and gender are independent noise
  // columns; age also partitions the panel for the three runs.
  {
    RngStream g = RngStream::derive(42, {901});
    std::ofstream out(dir / "panel.csv");
    out << "id,period,earnings,age,gender\n";
    for (std::size_t i = 0; i < 80000; ++i) {
      const double u = g.next_double();
      const unsigned age = 30 + 10 * static_cast<unsigned>(g.next_below(3));
      const unsigned gender = static_cast<unsigned>(g.next_below(2));
      const double e1 = std::exp(10.0 + 2.0 * u);
      const double z = pareto_from_uniform(1.0 - g.next_double(), 1.0 + 10.0 * u);
      const double e2 = e1 * std::exp((g.next_below(2) ? 0.1 : -0.1) * z);
      out << "w" << i << ",0," << format_number(e1) << "," << age << ","
          << gender << "\n";
      out << "w" << i << ",1," << format_number(e2) << "," << age << ","
          << gender << "\n";
    }
  }

  const auto start = std::chrono::steady_clock::now();
  std::size_t covered = 0, points = 0;
  for (const char* age : {"30", "40", "50"}) {
    const std::string outfile = (dir / ("est" + std::string(age) + ".csv")).string();
    const std::string cmd = cli + " estimate --input " +
                            (dir / "panel.csv").string() +
                            " --panel --base-period 0 --next-period 1"
                            " --filter age=" + age +
                            " --x0 0.05:0.95:0.05 --k 20 --splits 200"
                            " --seed 42 --format csv --out " + outfile + log;
    const int rc = run_command(cmd);
    c.check(rc == 0, std::string("estimate run for age ") + age + " exits 0");
    if (rc != 0) continue;

    const CsvTable table = read_csv(outfile);
    const auto x0_col = table.column("x0");
    const auto ub_col = table.column("upper_bound");
    c.check(x0_col && ub_col,
            std::string("age ") + age + " output has x0 and upper_bound columns");
    if (!x0_col || !ub_col) continue;

    std::size_t run_covered = 0, run_points = 0;
    for (const auto& row : table.rows) {
      const auto x0 = parse_number(row[*x0_col]);
      const auto ub = parse_number(row[*ub_col]);
      if (!x0) continue;
      ++run_points;
      const double alpha_true = 1.0 + 10.0 * *x0;
      if (ub && alpha_true <= *ub) ++run_covered;
    }
    c.check(run_points == 19,
            std::string("age ") + age + " produces 19 grid points (got " +
                std::to_string(run_points) + ")");
    c.note(std::string("age ") + age + ": " + std::to_string(run_covered) +
           "/" + std::to_string(run_points) +
           " points with true exponent under the one-sided bound");
    covered += run_covered;
    points += run_points;
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  c.check(points == 57, "57 grid points across the three runs (got " +
                            std::to_string(points) + ")");
  c.check(covered >= 52, "true exponent within the one-sided bound at " +
                             std::to_string(covered) + "/57 points (need 52)");
  c.check(elapsed < 600.0,
          "three conditional estimation runs finished in " + fmt(elapsed, 4) +
              " s (limit 600)");
}

}  // namespace

int main(int argc, char** argv) {
  int criterion = 0;
  std::string cli;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--criterion" && i + 1 < argc) {
      criterion = std::atoi(argv[++i]);
    } else if (a == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else {
      std::cerr << "usage: tailrisk_acceptance --criterion N [--cli PATH]\n";
      return 2;
    }
  }
  if (criterion < 1 || criterion > 9) {
    std::cerr << "--criterion wants a value in 1..9\n";
    return 2;
  }
  if ((criterion == 8 || criterion == 9) && cli.empty()) {
    std::cerr << "--cli is required for criteria 8 and 9\n";
    return 2;
  }

  Checker c;
  try {
    switch (criterion) {
      case 1: criterion_1(c); break;
      case 2: criterion_2(c); break;
      case 3: criterion_3(c); break;
      case 4: criterion_4(c); break;
      case 5: criterion_5(c); break;
      case 6: criterion_6(c); break;
      case 7: criterion_7(c); break;
      case 8: criterion_8(c, cli); break;
      case 9: criterion_9(c, cli); break;
    }
  } catch (const tailrisk::Error& e) {
    c.check(false, std::string("unexpected error: category=") +
                       errc_name(e.code()) + ": " + e.what());
  } catch (const std::exception& e) {
    c.check(false, std::string("unexpected exception: ") + e.what());
  }

  std::cout << "criterion " << criterion << ": "
            << (c.failed == 0 ? "PASS" : "FAIL") << std::endl;
  return c.failed == 0 ? 0 : 1;
}
