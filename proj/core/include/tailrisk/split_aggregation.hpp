#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tailrisk/dataset.hpp"
#include "tailrisk/hill.hpp"
#include "tailrisk/inference.hpp"

namespace tailrisk {

// Full-pipeline configuration. Zeros mean "auto": grid sides default to
// floor(sqrt(N)), k to per-split selection, k_max to floor(I/2)-1. Thread
// count never affects results, only wall time.
struct PipelineConfig {
  std::size_t i_rows = 0;
  std::size_t j_cols = 0;
  std::size_t k = 0;
  std::size_t k_min = 5;
  std::size_t k_max = 0;
  std::size_t splits = 1000;
  std::uint64_t master_seed = 42;
  std::vector<double> scale;  // optional per-coordinate distance weights
  std::vector<double> moment_orders = {2.0, 3.0, 4.0};
  double level = 0.05;
  TestForm test_form = TestForm::studentized;
  unsigned threads = 0;
};

struct SplitOutcome {
  double alpha_hat = 0.0;
  std::size_t k_used = 0;
  std::uint64_t seed = 0;
};

// Median aggregation across splits: alpha_bar = median{alpha_s}, sigma2_hat =
// median{alpha_s^2 + (alpha_s - alpha_bar)^2}. Medians of even-length lists
// take the lower-middle order statistic so outputs are attained values.
struct AggregateEstimate {
  double alpha_bar = 0.0;
  double sigma2_hat = 0.0;
  std::size_t s_splits = 0;
  std::size_t k_median = 0;
  std::vector<SplitOutcome> per_split;
};

// Lower-middle median (index (n-1)/2 of the sorted copy).
double lower_median(std::vector<double> values);

AggregateEstimate aggregate_splits(std::span<const SplitOutcome> splits);
AggregateEstimate aggregate_splits(std::span<const TailEstimate> estimates);

// Documented mixing of (master seed, split index); any split is reproducible
// in isolation.
std::uint64_t split_seed(std::uint64_t master_seed, std::size_t split_index);

struct ConditionalEstimate {
  std::vector<double> x0;
  AggregateEstimate aggregate;
  double sigma_hat = 0.0;  // sqrt(sigma2_hat)
  std::vector<MomentTest> moment_tests;
  ConfidenceBound upper_bound;  // one-sided, confidence 1 - level
  std::size_t attempted_splits = 0;
  std::size_t failed_splits = 0;
};

// S times: derive split seed, split into a grid, extract the local sample at
// x0, pick K (fixed or per-split selection), Hill-estimate; then aggregate,
// test the configured moment orders with sigma = sqrt(sigma2_hat) and
// K = k_median, and attach the one-sided upper confidence bound. Failed
// splits are skipped with accounting; more than 10% failing is an error.
ConditionalEstimate estimate_conditional_alpha(const Dataset& data,
                                               std::span<const double> x0,
                                               const PipelineConfig& config);

}  // namespace tailrisk
