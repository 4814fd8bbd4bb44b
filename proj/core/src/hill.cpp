#include "tailrisk/hill.hpp"

#include <cmath>

#include "tailrisk/error.hpp"

namespace tailrisk {

namespace {

void check_tail(std::span<const double> descending, std::size_t k) {
  if (k < 1) fail(Errc::invalid_range, "k must be >= 1");
  if (k + 1 > descending.size()) {
    fail(Errc::insufficient_data, "need k+1 order statistics");
  }
  if (!(descending[k] > 0.0)) {
    fail(Errc::nonpositive_threshold,
         "order statistic Y_(K+1) must be strictly positive");
  }
}

}  // namespace

std::vector<double> log_spacings(std::span<const double> descending,
                                 std::size_t k) {
  check_tail(descending, k);
  const double log_threshold = std::log(descending[k]);
  std::vector<double> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    out[i] = std::log(descending[i]) - log_threshold;
  }
  return out;
}

TailEstimate hill_alpha(std::span<const double> descending, std::size_t k) {
  check_tail(descending, k);
  const double log_threshold = std::log(descending[k]);
  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sum += std::log(descending[i]) - log_threshold;
  }
  const double xi = sum / static_cast<double>(k);
  if (!(xi > 0.0)) {
    fail(Errc::degenerate_sample,
         "top k+1 order statistics are all equal; tail index is zero");
  }
  TailEstimate est;
  est.xi_hat = xi;
  est.alpha_hat = 1.0 / xi;
  est.se_alpha = est.alpha_hat / std::sqrt(static_cast<double>(k));
  est.order_stat_threshold = descending[k];
  est.k_used = k;
  est.n_local = descending.size();
  return est;
}

}  // namespace tailrisk
