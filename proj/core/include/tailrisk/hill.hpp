#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tailrisk/array_builder.hpp"

namespace tailrisk {

// Hill estimate of the Pareto exponent from the top K+1 order statistics.
struct TailEstimate {
  double alpha_hat = 0.0;
  double xi_hat = 0.0;  // 1/alpha_hat
  double se_alpha = 0.0;  // alpha_hat/sqrt(k_used), asymptotic
  double order_stat_threshold = 0.0;  // Y_(K+1)
  std::size_t k_used = 0;
  std::size_t n_local = 0;
};

// {log Y_(i) - log Y_(K+1)}, i = 1..K, from a descending-sorted sample.
std::vector<double> log_spacings(std::span<const double> descending,
                                 std::size_t k);

// alpha_hat = [ (1/K) sum log-spacings ]^-1. Scale-invariant. The top K+1
// values must be strictly positive and not all equal.
TailEstimate hill_alpha(std::span<const double> descending, std::size_t k);

inline std::vector<double> log_spacings(const LocalTailSample& sample,
                                        std::size_t k) {
  return log_spacings(std::span<const double>(sample.values), k);
}

inline TailEstimate hill_alpha(const LocalTailSample& sample, std::size_t k) {
  return hill_alpha(std::span<const double>(sample.values), k);
}

}  // namespace tailrisk
