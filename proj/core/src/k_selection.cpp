#include "tailrisk/k_selection.hpp"

#include <cmath>

#include "tailrisk/error.hpp"
#include "tailrisk/hill.hpp"

namespace tailrisk {

std::vector<double> spacing_statistics(std::span<const double> descending,
                                       std::size_t k) {
  if (k < 1) fail(Errc::invalid_range, "k must be >= 1");
  if (k + 1 > descending.size()) {
    fail(Errc::insufficient_data, "need k+1 order statistics");
  }
  if (!(descending[k] > 0.0)) {
    fail(Errc::nonpositive_threshold,
         "order statistic Y_(K+1) must be strictly positive");
  }
  std::vector<double> z(k);
  for (std::size_t i = 1; i <= k; ++i) {
    z[i - 1] = static_cast<double>(i) *
               (std::log(descending[i - 1]) - std::log(descending[i]));
  }
  return z;
}

std::vector<long long> guillou_hall_weights(std::size_t k) {
  if (k < 2) fail(Errc::invalid_range, "weights need k >= 2");
  std::vector<long long> w(k);
  for (std::size_t i = 1; i <= k; ++i) {
    w[i - 1] = static_cast<long long>(k) - 2 * static_cast<long long>(i) + 1;
  }
  return w;
}

double t_statistic(std::span<const double> descending, std::size_t k) {
  const std::vector<double> z = spacing_statistics(descending, k);
  const std::vector<long long> w = guillou_hall_weights(k);
  double weighted = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double wi = static_cast<double>(w[i]);
    weighted += wi * z[i];
    sum_sq += wi * wi;
  }
  const double xi = hill_alpha(descending, k).xi_hat;
  return weighted / (std::sqrt(sum_sq) * xi);
}

std::pair<std::size_t, bool> apply_selection_rule(
    std::span<const KDiagnostic> diagnostics) {
  if (diagnostics.empty()) {
    fail(Errc::invalid_range, "selection rule needs at least one candidate");
  }
  // Scan from the largest k: track whether every candidate at or above the
  // current one clears 1.
  std::size_t best = 0;
  bool found = false;
  for (std::size_t idx = diagnostics.size(); idx-- > 0;) {
    if (!(diagnostics[idx].c_stat > 1.0)) break;
    best = diagnostics[idx].k;
    found = true;
  }
  if (!found) return {diagnostics.back().k, true};
  return {best, false};
}

KSelection select_k(std::span<const double> descending, std::size_t k_min,
                    std::size_t k_max) {
  if (k_min < 2 || k_min >= k_max || k_max + 1 > descending.size()) {
    fail(Errc::invalid_range, "need 2 <= k_min < k_max <= sample size - 1");
  }

  KSelection sel;
  sel.diagnostics.reserve(k_max - k_min + 1);
  for (std::size_t k = k_min; k <= k_max; ++k) {
    KDiagnostic d;
    d.k = k;
    d.t_stat = t_statistic(descending, k);
    d.window = k / 2;
    sel.diagnostics.push_back(d);
  }

  // C_k = RMS of T^2 over the window [k - l, k + l] clipped to the range.
  const std::size_t count = sel.diagnostics.size();
  for (std::size_t idx = 0; idx < count; ++idx) {
    const std::size_t k = sel.diagnostics[idx].k;
    const std::size_t l = sel.diagnostics[idx].window;
    const std::size_t lo = k - l < k_min ? k_min : k - l;
    const std::size_t hi = k + l > k_max ? k_max : k + l;
    double sum = 0.0;
    for (std::size_t t = lo; t <= hi; ++t) {
      const double ts = sel.diagnostics[t - k_min].t_stat;
      sum += ts * ts;
    }
    sel.diagnostics[idx].c_stat =
        std::sqrt(sum / static_cast<double>(hi - lo + 1));
  }

  const auto [k_star, fallback] = apply_selection_rule(sel.diagnostics);
  sel.k_star = k_star;
  sel.fallback_used = fallback;
  return sel;
}

}  // namespace tailrisk
