#include "tailrisk/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "tailrisk/error.hpp"
#include "tailrisk/hill.hpp"

namespace tailrisk {

BandwidthEstimate gardes_estimate(std::span<const double> y,
                                  std::span<const double> x, double x0,
                                  double bandwidth, std::size_t k) {
  if (y.size() != x.size()) {
    fail(Errc::dimension_mismatch, "y and x must have equal length");
  }
  if (!(bandwidth > 0.0)) {
    fail(Errc::invalid_range, "bandwidth must be positive");
  }
  std::vector<double> selected;
  selected.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (std::abs(x[i] - x0) <= bandwidth) selected.push_back(y[i]);
  }
  if (selected.size() < k + 1) {
    fail(Errc::insufficient_neighborhood,
         "fewer than k+1 observations within the bandwidth");
  }
  std::sort(selected.begin(), selected.end(), std::greater<>());
  const TailEstimate est = hill_alpha(selected, k);

  BandwidthEstimate out;
  out.alpha_hat = est.alpha_hat;
  out.xi_hat = est.xi_hat;
  out.se_alpha = est.se_alpha;
  out.bandwidth = bandwidth;
  out.order_stat_threshold = est.order_stat_threshold;
  out.k_used = est.k_used;
  out.n_selected = selected.size();
  return out;
}

namespace {

// Quantile of a sorted sample: the ceil(n*p)-th smallest value, clamped to
// the sample. The epsilon guards ceil against n*p landing a hair above an
// integer it mathematically equals.
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const double n = static_cast<double>(sorted.size());
  auto idx = static_cast<long long>(std::ceil(n * p - 1e-9));
  if (idx < 1) idx = 1;
  if (idx > static_cast<long long>(sorted.size())) {
    idx = static_cast<long long>(sorted.size());
  }
  return sorted[static_cast<std::size_t>(idx - 1)];
}

std::vector<double> sorted_copy(std::span<const double> values) {
  if (values.empty()) fail(Errc::empty_data, "quantile of an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

double kelly_sorted(const std::vector<double>& sorted) {
  const double q1 = quantile_sorted(sorted, 0.1);
  const double q5 = quantile_sorted(sorted, 0.5);
  const double q9 = quantile_sorted(sorted, 0.9);
  if (!(q9 > q1)) {
    fail(Errc::degenerate_quantiles, "Q.9 must exceed Q.1");
  }
  return ((q9 - q5) - (q5 - q1)) / (q9 - q1);
}

double crow_siddiqui_sorted(const std::vector<double>& sorted) {
  const double num = quantile_sorted(sorted, 0.975) - quantile_sorted(sorted, 0.025);
  const double den = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
  if (!(den > 0.0)) {
    fail(Errc::degenerate_quantiles, "interquartile range must be positive");
  }
  return num / den;
}

double sample_std(std::span<const double> values) {
  const double n = static_cast<double>(values.size());
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return values.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
}

}  // namespace

double empirical_quantile(std::span<const double> values, double p) {
  if (!(p >= 0.0) || !(p <= 1.0)) {
    fail(Errc::invalid_range, "quantile level must lie in [0,1]");
  }
  return quantile_sorted(sorted_copy(values), p);
}

double kelly_skewness(std::span<const double> values) {
  return kelly_sorted(sorted_copy(values));
}

double crow_siddiqui(std::span<const double> values) {
  return crow_siddiqui_sorted(sorted_copy(values));
}

std::vector<DescriptiveRow> binned_descriptives(std::span<const double> y,
                                                std::span<const double> prev,
                                                std::size_t n_bins,
                                                std::size_t min_bin_count) {
  if (y.size() != prev.size()) {
    fail(Errc::dimension_mismatch, "y and prev must have equal length");
  }
  if (y.empty()) fail(Errc::empty_data, "no observations to bin");
  if (n_bins < 1) fail(Errc::invalid_range, "need at least one bin");

  // Rank-based quantile binning: bin of sorted rank r is r*n_bins/N, which
  // keeps every count within one of N/n_bins.
  const std::size_t n = y.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return prev[a] < prev[b];
  });

  std::vector<std::vector<double>> bin_y(n_bins);
  std::vector<DescriptiveRow> rows(n_bins);
  for (std::size_t b = 0; b < n_bins; ++b) {
    rows[b].bin = b;
    rows[b].lower = std::numeric_limits<double>::quiet_NaN();
    rows[b].upper = std::numeric_limits<double>::quiet_NaN();
  }
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t b = r * n_bins / n;
    const std::size_t i = order[r];
    if (bin_y[b].empty()) rows[b].lower = prev[i];
    rows[b].upper = prev[i];
    bin_y[b].push_back(y[i]);
  }

  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t b = 0; b < n_bins; ++b) {
    rows[b].count = bin_y[b].size();
    rows[b].underfilled = bin_y[b].size() < min_bin_count;
    if (bin_y[b].empty()) {
      rows[b].std_dev = nan;
      rows[b].kelly = nan;
      rows[b].crow_siddiqui = nan;
      continue;
    }
    rows[b].std_dev = sample_std(bin_y[b]);
    std::vector<double> sorted = bin_y[b];
    std::sort(sorted.begin(), sorted.end());
    try {
      rows[b].kelly = kelly_sorted(sorted);
    } catch (const Error&) {
      rows[b].kelly = nan;
    }
    try {
      rows[b].crow_siddiqui = crow_siddiqui_sorted(sorted);
    } catch (const Error&) {
      rows[b].crow_siddiqui = nan;
    }
  }
  return rows;
}

}  // namespace tailrisk
