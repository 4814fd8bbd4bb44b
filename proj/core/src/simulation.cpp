#include "tailrisk/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "tailrisk/baselines.hpp"
#include "tailrisk/error.hpp"
#include "tailrisk/hill.hpp"
#include "tailrisk/inference.hpp"
#include "tailrisk/parallel.hpp"

namespace tailrisk {

Design Design::from_id(int id) {
  if (id != 1 && id != 2) fail(Errc::invalid_range, "design id must be 1 or 2");
  return Design{id};
}

double true_alpha(const Design& design, double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    fail(Errc::invalid_range, "x must lie in [0,1]");
  }
  return design.id == 1 ? 1.0 + 10.0 * x : 10.0 * (x * x - x + 1.0);
}

double pareto_from_uniform(double u, double alpha) {
  if (!(u > 0.0) || !(u <= 1.0)) {
    fail(Errc::invalid_range, "u must lie in (0,1]");
  }
  if (!(alpha > 0.0)) fail(Errc::invalid_range, "alpha must be positive");
  return std::pow(u, -1.0 / alpha);
}

double sample_pareto(double alpha, RngStream& g) {
  // 1 - next_double() lies in (0,1]; avoids the u = 0 pole.
  return pareto_from_uniform(1.0 - g.next_double(), alpha);
}

ObservationGrid generate_grid(const Design& design, std::size_t i_rows,
                              std::size_t j_cols, RngStream& g) {
  if (i_rows == 0 || j_cols == 0) {
    fail(Errc::invalid_range, "grid dimensions must be positive");
  }
  ObservationGrid grid;
  grid.rows = i_rows;
  grid.cols = j_cols;
  grid.dim = 1;
  const std::size_t cells = i_rows * j_cols;
  grid.y.resize(cells);
  grid.x.resize(cells);
  for (std::size_t c = 0; c < cells; ++c) {
    const double x = g.next_double();
    grid.x[c] = x;
    grid.y[c] = sample_pareto(true_alpha(design, x), g);
  }
  return grid;
}

ReplicationMatrix run_replications(const Design& design, std::size_t i_rows,
                                   std::size_t j_cols,
                                   std::span<const std::size_t> ks,
                                   std::span<const double> x0s,
                                   std::size_t reps, std::uint64_t master_seed,
                                   unsigned threads) {
  if (ks.empty() || x0s.empty() || reps == 0) {
    fail(Errc::invalid_range, "need at least one k, one x0 and one replication");
  }
  ReplicationMatrix m;
  m.ks.assign(ks.begin(), ks.end());
  m.x0s.assign(x0s.begin(), x0s.end());
  m.reps = reps;
  m.alpha.assign(reps * ks.size() * x0s.size(),
                 std::numeric_limits<double>::quiet_NaN());

  parallel_for(reps, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      RngStream g = RngStream::derive(
          master_seed, {stream_tag::sim_grid, static_cast<std::uint64_t>(design.id),
                        i_rows, j_cols, r});
      const ObservationGrid grid = generate_grid(design, i_rows, j_cols, g);
      for (std::size_t xi = 0; xi < x0s.size(); ++xi) {
        const double x0 = x0s[xi];
        const LocalTailSample sample =
            extract_local_sample(grid, std::span<const double>(&x0, 1));
        for (std::size_t ki = 0; ki < ks.size(); ++ki) {
          double& slot = m.alpha[(r * x0s.size() + xi) * ks.size() + ki];
          try {
            slot = hill_alpha(sample, ks[ki]).alpha_hat;
          } catch (const Error&) {
            // leave NaN: counted as a failed replication for this cell
          }
        }
      }
    }
  });
  return m;
}

GardesReplicationMatrix run_gardes_replications(
    const Design& design, std::size_t n_total, std::size_t k, double x0,
    std::span<const double> bandwidths, std::size_t reps,
    std::uint64_t master_seed, unsigned threads) {
  if (bandwidths.empty() || reps == 0 || n_total == 0) {
    fail(Errc::invalid_range,
         "need a positive sample size, one bandwidth and one replication");
  }
  GardesReplicationMatrix m;
  m.bandwidths.assign(bandwidths.begin(), bandwidths.end());
  m.reps = reps;
  m.alpha.assign(reps * bandwidths.size(),
                 std::numeric_limits<double>::quiet_NaN());

  parallel_for(reps, threads, [&](std::size_t begin, std::size_t end) {
    std::vector<double> xs(n_total);
    std::vector<double> ys(n_total);
    for (std::size_t r = begin; r < end; ++r) {
      RngStream g = RngStream::derive(
          master_seed, {stream_tag::sim_flat, static_cast<std::uint64_t>(design.id),
                        n_total, r});
      for (std::size_t i = 0; i < n_total; ++i) {
        xs[i] = g.next_double();
        ys[i] = sample_pareto(true_alpha(design, xs[i]), g);
      }
      for (std::size_t bi = 0; bi < bandwidths.size(); ++bi) {
        try {
          m.alpha[r * bandwidths.size() + bi] =
              gardes_estimate(ys, xs, x0, bandwidths[bi], k).alpha_hat;
        } catch (const Error&) {
          // leave NaN
        }
      }
    }
  });
  return m;
}

namespace {

struct CellSummary {
  double bias, sd, rmse, coverage, mcse;
  std::size_t failures, reps;
};

CellSummary summarize(double alpha_true, std::size_t k,
                      std::span<const double> alphas) {
  std::size_t valid = 0;
  double sum = 0.0;
  std::size_t covered = 0;
  for (double a : alphas) {
    if (std::isnan(a)) continue;
    ++valid;
    sum += a;
    const ConfidenceBound ci = confidence_bounds(a, a, k, 0.95, false);
    if (*ci.lower <= alpha_true && alpha_true <= *ci.upper) ++covered;
  }
  CellSummary s{};
  s.reps = alphas.size();
  s.failures = alphas.size() - valid;
  if (valid == 0) {
    s.bias = s.sd = s.rmse = s.mcse = std::numeric_limits<double>::quiet_NaN();
    s.coverage = 0.0;
    return s;
  }
  const double mean = sum / static_cast<double>(valid);
  double ss = 0.0;
  for (double a : alphas) {
    if (std::isnan(a)) continue;
    ss += (a - mean) * (a - mean);
  }
  s.bias = mean - alpha_true;
  s.sd = valid > 1 ? std::sqrt(ss / static_cast<double>(valid - 1)) : 0.0;
  s.rmse = std::sqrt(s.bias * s.bias + s.sd * s.sd);
  s.coverage = static_cast<double>(covered) / static_cast<double>(valid);
  s.mcse = s.sd / std::sqrt(static_cast<double>(valid));
  return s;
}

}  // namespace

McCellResult summarize_cell(const Design& design, std::size_t i_rows,
                            std::size_t j_cols, std::size_t k, double x0,
                            std::span<const double> alphas) {
  const CellSummary s = summarize(true_alpha(design, x0), k, alphas);
  McCellResult out;
  out.design = design.id;
  out.i_rows = i_rows;
  out.j_cols = j_cols;
  out.k = k;
  out.x0 = x0;
  out.reps = s.reps;
  out.bias = s.bias;
  out.sd = s.sd;
  out.rmse = s.rmse;
  out.coverage = s.coverage;
  out.mc_standard_error = s.mcse;
  out.failures = s.failures;
  return out;
}

std::vector<McCellResult> run_monte_carlo(const Design& design,
                                          std::size_t i_rows,
                                          std::size_t j_cols, std::size_t k,
                                          std::span<const double> x0_list,
                                          std::size_t reps,
                                          std::uint64_t master_seed,
                                          unsigned threads) {
  if (k + 1 > i_rows) fail(Errc::invalid_range, "k+1 must not exceed I rows");
  const std::size_t ks[1] = {k};
  const ReplicationMatrix m =
      run_replications(design, i_rows, j_cols, ks, x0_list, reps, master_seed,
                       threads);
  std::vector<McCellResult> cells;
  cells.reserve(x0_list.size());
  std::vector<double> column(reps);
  for (std::size_t xi = 0; xi < x0_list.size(); ++xi) {
    for (std::size_t r = 0; r < reps; ++r) column[r] = m.at(r, xi, 0);
    cells.push_back(
        summarize_cell(design, i_rows, j_cols, k, x0_list[xi], column));
  }
  return cells;
}

std::vector<GardesCellResult> run_monte_carlo_gardes(
    const Design& design, std::size_t n_total, std::size_t k, double x0,
    std::span<const double> bandwidth_list, std::size_t reps,
    std::uint64_t master_seed, unsigned threads) {
  const GardesReplicationMatrix m = run_gardes_replications(
      design, n_total, k, x0, bandwidth_list, reps, master_seed, threads);
  std::vector<GardesCellResult> cells;
  cells.reserve(bandwidth_list.size());
  std::vector<double> column(reps);
  for (std::size_t bi = 0; bi < bandwidth_list.size(); ++bi) {
    for (std::size_t r = 0; r < reps; ++r) column[r] = m.at(r, bi);
    const CellSummary s = summarize(true_alpha(design, x0), k, column);
    GardesCellResult out;
    out.design = design.id;
    out.n_total = n_total;
    out.k = k;
    out.x0 = x0;
    out.bandwidth = bandwidth_list[bi];
    out.reps = s.reps;
    out.bias = s.bias;
    out.sd = s.sd;
    out.rmse = s.rmse;
    out.coverage = s.coverage;
    out.mc_standard_error = s.mcse;
    out.failures = s.failures;
    cells.push_back(out);
  }
  return cells;
}

}  // namespace tailrisk
