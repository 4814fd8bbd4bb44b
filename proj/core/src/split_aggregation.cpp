#include "tailrisk/split_aggregation.hpp"

#include <algorithm>
#include <cmath>

#include "tailrisk/array_builder.hpp"
#include "tailrisk/error.hpp"
#include "tailrisk/k_selection.hpp"
#include "tailrisk/parallel.hpp"
#include "tailrisk/rng.hpp"

namespace tailrisk {

double lower_median(std::vector<double> values) {
  if (values.empty()) fail(Errc::usage, "median of an empty list");
  std::sort(values.begin(), values.end());
  return values[(values.size() - 1) / 2];
}

std::uint64_t split_seed(std::uint64_t master_seed, std::size_t split_index) {
  return RngStream::derive(master_seed, {stream_tag::split_seq, split_index})
      .next_u64();
}

AggregateEstimate aggregate_splits(std::span<const SplitOutcome> splits) {
  if (splits.empty()) fail(Errc::usage, "aggregate_splits needs at least one split");

  std::vector<double> alphas(splits.size());
  std::vector<double> ks(splits.size());
  for (std::size_t s = 0; s < splits.size(); ++s) {
    alphas[s] = splits[s].alpha_hat;
    ks[s] = static_cast<double>(splits[s].k_used);
  }

  AggregateEstimate agg;
  agg.alpha_bar = lower_median(alphas);
  std::vector<double> adjusted(splits.size());
  for (std::size_t s = 0; s < splits.size(); ++s) {
    const double dev = alphas[s] - agg.alpha_bar;
    adjusted[s] = alphas[s] * alphas[s] + dev * dev;
  }
  agg.sigma2_hat = lower_median(std::move(adjusted));
  agg.k_median = static_cast<std::size_t>(lower_median(std::move(ks)));
  agg.s_splits = splits.size();
  agg.per_split.assign(splits.begin(), splits.end());
  return agg;
}

AggregateEstimate aggregate_splits(std::span<const TailEstimate> estimates) {
  std::vector<SplitOutcome> splits(estimates.size());
  for (std::size_t s = 0; s < estimates.size(); ++s) {
    splits[s].alpha_hat = estimates[s].alpha_hat;
    splits[s].k_used = estimates[s].k_used;
    splits[s].seed = 0;
  }
  return aggregate_splits(splits);
}

ConditionalEstimate estimate_conditional_alpha(const Dataset& data,
                                               std::span<const double> x0,
                                               const PipelineConfig& config) {
  data.validate();
  if (data.size() == 0) fail(Errc::empty_data, "empty dataset");
  if (x0.size() != data.dim) {
    fail(Errc::dimension_mismatch,
         "conditioning point dimension does not match data");
  }
  if (config.splits < 1) fail(Errc::invalid_range, "need at least one split");
  if (!(config.level > 0.0) || !(config.level < 1.0)) {
    fail(Errc::invalid_range, "level must lie in (0,1)");
  }

  const std::size_t n = data.size();
  const auto side =
      static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
  const std::size_t i_rows = config.i_rows > 0 ? config.i_rows : side;
  const std::size_t j_cols = config.j_cols > 0 ? config.j_cols : side;
  if (i_rows * j_cols > n) {
    fail(Errc::grid_sizing, "grid dimensions exceed record count");
  }
  const std::size_t k_max =
      config.k_max > 0 ? config.k_max : default_k_max(i_rows);
  if (config.k > 0 && config.k + 1 > i_rows) {
    fail(Errc::invalid_range, "fixed k needs k+1 <= I rows");
  }
  if (config.k == 0 && (config.k_min < 2 || config.k_min >= k_max)) {
    fail(Errc::invalid_range, "k selection range is empty for this grid");
  }

  const std::size_t s_total = config.splits;
  std::vector<SplitOutcome> outcomes(s_total);
  std::vector<char> failed(s_total, 0);

  parallel_for(s_total, config.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) {
      const std::uint64_t seed = split_seed(config.master_seed, s);
      outcomes[s].seed = seed;
      try {
        const ObservationGrid grid = split_into_grid(data, i_rows, j_cols, seed);
        const LocalTailSample sample =
            extract_local_sample(grid, x0, config.scale);
        const std::size_t k =
            config.k > 0
                ? config.k
                : select_k(sample, config.k_min, k_max).k_star;
        const TailEstimate est = hill_alpha(sample, k);
        outcomes[s].alpha_hat = est.alpha_hat;
        outcomes[s].k_used = est.k_used;
      } catch (const Error&) {
        failed[s] = 1;
      }
    }
  });

  std::vector<SplitOutcome> kept;
  kept.reserve(s_total);
  for (std::size_t s = 0; s < s_total; ++s) {
    if (!failed[s]) kept.push_back(outcomes[s]);
  }
  const std::size_t n_failed = s_total - kept.size();
  if (n_failed * 10 > s_total) {
    fail(Errc::too_many_failed_splits,
         "more than 10% of splits failed to produce an estimate");
  }
  if (kept.empty()) {
    fail(Errc::too_many_failed_splits, "every split failed");
  }

  ConditionalEstimate result;
  result.x0.assign(x0.begin(), x0.end());
  result.aggregate = aggregate_splits(kept);
  result.sigma_hat = std::sqrt(result.aggregate.sigma2_hat);
  result.attempted_splits = s_total;
  result.failed_splits = n_failed;

  for (double r : config.moment_orders) {
    result.moment_tests.push_back(moment_test(result.aggregate.alpha_bar,
                                              result.sigma_hat,
                                              result.aggregate.k_median, r,
                                              config.level, config.test_form));
  }
  result.upper_bound =
      confidence_bounds(result.aggregate.alpha_bar, result.sigma_hat,
                        result.aggregate.k_median, 1.0 - config.level, true);
  return result;
}

}  // namespace tailrisk
