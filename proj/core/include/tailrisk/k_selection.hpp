#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "tailrisk/array_builder.hpp"

namespace tailrisk {

// Diagnostic at one candidate k: weighted-spacing statistic T and the moving
// root-mean-square C of T^2 over the window k +/- floor(k/2).
struct KDiagnostic {
  std::size_t k = 0;
  double t_stat = 0.0;
  double c_stat = 0.0;
  std::size_t window = 0;  // floor(k/2)
};

struct KSelection {
  std::size_t k_star = 0;
  bool fallback_used = false;
  std::vector<KDiagnostic> diagnostics;  // ascending k over the candidate range
};

// Z_i = i * log(Y_(i)/Y_(i+1)), i = 1..k. Under an exact Pareto tail these are
// i.i.d. exponential with mean xi; sum_{i<=k} Z_i = k * xi_hat(k) exactly.
std::vector<double> spacing_statistics(std::span<const double> descending,
                                       std::size_t k);

// Antisymmetric integer weights w_i = k - 2i + 1 (i = 1..k); sum is zero.
std::vector<long long> guillou_hall_weights(std::size_t k);

// T_k = (sum w_i^2)^(-1/2) * xi_hat(k)^(-1) * sum w_i Z_i, with xi_hat the
// Hill tail index at the same k. Approximately N(0,1) under an exact tail.
double t_statistic(std::span<const double> descending, std::size_t k);

// Selection rule on precomputed diagnostics (ascending k): the smallest k
// whose entire tail of candidates has c_stat > 1; (last k, fallback) if none.
std::pair<std::size_t, bool> apply_selection_rule(
    std::span<const KDiagnostic> diagnostics);

// Full scan over [k_min, k_max]; window indices clip to the range.
KSelection select_k(std::span<const double> descending, std::size_t k_min,
                    std::size_t k_max);

inline KSelection select_k(const LocalTailSample& sample, std::size_t k_min,
                           std::size_t k_max) {
  return select_k(std::span<const double>(sample.values), k_min, k_max);
}

inline std::vector<double> spacing_statistics(const LocalTailSample& sample,
                                              std::size_t k) {
  return spacing_statistics(std::span<const double>(sample.values), k);
}

inline double t_statistic(const LocalTailSample& sample, std::size_t k) {
  return t_statistic(std::span<const double>(sample.values), k);
}

// Default candidate bounds for a local sample of I rows.
inline constexpr std::size_t kDefaultKMin = 5;
inline std::size_t default_k_max(std::size_t i_rows) {
  return i_rows / 2 > 0 ? i_rows / 2 - 1 : 0;
}

}  // namespace tailrisk
