#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tailrisk/array_builder.hpp"
#include "tailrisk/rng.hpp"

namespace tailrisk {

// Monte Carlo designs: X ~ U(0,1), Y ~ unit-scale Pareto(alpha(X)).
// Design 1: alpha(x) = 1 + 10x. Design 2: alpha(x) = 10(x^2 - x + 1).
struct Design {
  int id = 1;
  static Design from_id(int id);
};

double true_alpha(const Design& design, double x);

// Y = u^(-1/alpha) for u in (0,1]; unit scale, so Y >= 1.
double pareto_from_uniform(double u, double alpha);
double sample_pareto(double alpha, RngStream& g);

// I x J cells, row-major; per cell draws X then the Pareto uniform, in that
// order, so the stream layout is part of the determinism contract.
ObservationGrid generate_grid(const Design& design, std::size_t i_rows,
                              std::size_t j_cols, RngStream& g);

struct McCellResult {
  int design = 0;
  std::size_t i_rows = 0;
  std::size_t j_cols = 0;
  std::size_t k = 0;
  double x0 = 0.0;
  std::size_t reps = 0;
  double bias = 0.0;
  double sd = 0.0;
  double rmse = 0.0;
  double coverage = 0.0;
  double mc_standard_error = 0.0;
  std::size_t failures = 0;
};

struct GardesCellResult {
  int design = 0;
  std::size_t n_total = 0;
  std::size_t k = 0;
  double x0 = 0.0;
  double bandwidth = 0.0;
  std::size_t reps = 0;
  double bias = 0.0;
  double sd = 0.0;
  double rmse = 0.0;
  double coverage = 0.0;
  double mc_standard_error = 0.0;
  std::size_t failures = 0;
};

// Raw per-replication estimates. One grid is generated per replication and
// evaluated at every x0 and k, so cross-x0 dependence within a replication is
// preserved (and the replication stream is keyed without k or x0).
struct ReplicationMatrix {
  std::vector<std::size_t> ks;
  std::vector<double> x0s;
  std::size_t reps = 0;
  std::vector<double> alpha;  // [(rep * x0s.size() + xi) * ks.size() + ki]

  double at(std::size_t rep, std::size_t xi, std::size_t ki) const {
    return alpha[(rep * x0s.size() + xi) * ks.size() + ki];
  }
};

ReplicationMatrix run_replications(const Design& design, std::size_t i_rows,
                                   std::size_t j_cols,
                                   std::span<const std::size_t> ks,
                                   std::span<const double> x0s,
                                   std::size_t reps, std::uint64_t master_seed,
                                   unsigned threads = 0);

// Flat-sample counterpart for the bandwidth baseline; one sample per
// replication shared across bandwidths.
struct GardesReplicationMatrix {
  std::vector<double> bandwidths;
  std::size_t reps = 0;
  std::vector<double> alpha;  // [rep * bandwidths.size() + bi]

  double at(std::size_t rep, std::size_t bi) const {
    return alpha[rep * bandwidths.size() + bi];
  }
};

GardesReplicationMatrix run_gardes_replications(
    const Design& design, std::size_t n_total, std::size_t k, double x0,
    std::span<const double> bandwidths, std::size_t reps,
    std::uint64_t master_seed, unsigned threads = 0);

// Summary of one cell from raw estimates (NaN = failed replication): bias,
// SD, rmse = sqrt(bias^2 + sd^2), coverage of the two-sided 95% interval,
// mc_standard_error = sd/sqrt(valid reps).
McCellResult summarize_cell(const Design& design, std::size_t i_rows,
                            std::size_t j_cols, std::size_t k, double x0,
                            std::span<const double> alphas);

std::vector<McCellResult> run_monte_carlo(const Design& design,
                                          std::size_t i_rows,
                                          std::size_t j_cols, std::size_t k,
                                          std::span<const double> x0_list,
                                          std::size_t reps,
                                          std::uint64_t master_seed,
                                          unsigned threads = 0);

std::vector<GardesCellResult> run_monte_carlo_gardes(
    const Design& design, std::size_t n_total, std::size_t k, double x0,
    std::span<const double> bandwidth_list, std::size_t reps,
    std::uint64_t master_seed, unsigned threads = 0);

}  // namespace tailrisk
