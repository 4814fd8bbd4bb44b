#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tailrisk {

// Hill estimate on the bandwidth neighborhood |x - x0| <= b of a flat sample.
struct BandwidthEstimate {
  double alpha_hat = 0.0;
  double xi_hat = 0.0;
  double se_alpha = 0.0;
  double bandwidth = 0.0;
  double order_stat_threshold = 0.0;
  std::size_t k_used = 0;
  std::size_t n_selected = 0;
};

BandwidthEstimate gardes_estimate(std::span<const double> y,
                                  std::span<const double> x, double x0,
                                  double bandwidth, std::size_t k);

// Type-1 (inverse empirical CDF, left-continuous) quantile of an unsorted
// sample; the convention every quantile-based statistic here shares.
double empirical_quantile(std::span<const double> values, double p);

// ((Q.9 - Q.5) - (Q.5 - Q.1)) / (Q.9 - Q.1); in [-1, 1].
double kelly_skewness(std::span<const double> values);

// (Q.975 - Q.025) / (Q.75 - Q.25); normal reference value 2.91.
double crow_siddiqui(std::span<const double> values);

struct DescriptiveRow {
  std::size_t bin = 0;
  double lower = 0.0;  // smallest previous-earnings value in the bin
  double upper = 0.0;  // largest
  std::size_t count = 0;
  double std_dev = 0.0;
  double kelly = 0.0;
  double crow_siddiqui = 0.0;
  bool underfilled = false;
};

// Quantile-bins the sample by `prev` (counts within +/-1 of N/n_bins) and
// computes std/Kelly/Crow-Siddiqui of y per bin. Bins under min_bin_count are
// flagged, not fatal; their quantile statistics are NaN when uncomputable.
std::vector<DescriptiveRow> binned_descriptives(std::span<const double> y,
                                                std::span<const double> prev,
                                                std::size_t n_bins,
                                                std::size_t min_bin_count = 40);

}  // namespace tailrisk
