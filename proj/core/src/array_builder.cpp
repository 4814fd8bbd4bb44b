#include "tailrisk/array_builder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "tailrisk/error.hpp"
#include "tailrisk/rng.hpp"

namespace tailrisk {

ObservationGrid split_into_grid(const Dataset& data, std::size_t i_rows,
                                std::size_t j_cols, std::uint64_t seed) {
  const std::size_t n = data.size();
  if (n < 4) fail(Errc::insufficient_data, "need at least 4 records to split");
  if (i_rows == 0 || j_cols == 0) {
    const auto side =
        static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
    i_rows = side;
    j_cols = side;
  }
  if (i_rows * j_cols > n) {
    fail(Errc::grid_sizing, "grid dimensions exceed record count");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  RngStream g = RngStream::derive(seed, {stream_tag::grid_split});
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(g.next_below(i + 1));
    std::swap(order[i], order[j]);
  }

  ObservationGrid grid;
  grid.rows = i_rows;
  grid.cols = j_cols;
  grid.dim = data.dim;
  grid.seed = seed;
  const std::size_t cells = i_rows * j_cols;
  grid.y.resize(cells);
  grid.x.resize(cells * data.dim);
  for (std::size_t c = 0; c < cells; ++c) {
    const std::size_t r = order[c];
    grid.y[c] = data.y[r];
    for (std::size_t d = 0; d < data.dim; ++d) {
      grid.x[c * data.dim + d] = data.x[r * data.dim + d];
    }
  }
  return grid;
}

LocalTailSample extract_local_sample(const ObservationGrid& grid,
                                     std::span<const double> x0,
                                     std::span<const double> scale) {
  if (x0.size() != grid.dim) {
    fail(Errc::dimension_mismatch,
         "conditioning point dimension does not match grid");
  }
  if (!scale.empty()) {
    if (scale.size() != grid.dim) {
      fail(Errc::dimension_mismatch, "scale weight dimension does not match grid");
    }
    for (double w : scale) {
      if (!(w > 0.0)) {
        fail(Errc::invalid_range, "scale weights must be strictly positive");
      }
    }
  }

  LocalTailSample out;
  out.x0.assign(x0.begin(), x0.end());
  out.values.resize(grid.rows);
  out.nn_distances.resize(grid.rows);

  const std::size_t dim = grid.dim;
  const std::size_t cols = grid.cols;
  if (dim == 1 && scale.empty()) {
    const double t0 = x0[0];
    for (std::size_t i = 0; i < grid.rows; ++i) {
      const double* xs = grid.x.data() + i * cols;
      double best = std::abs(xs[0] - t0);
      std::size_t best_j = 0;
      for (std::size_t j = 1; j < cols; ++j) {
        const double d = std::abs(xs[j] - t0);
        if (d < best) {
          best = d;
          best_j = j;
        }
      }
      out.values[i] = grid.y[i * cols + best_j];
      out.nn_distances[i] = best;
    }
  } else {
    for (std::size_t i = 0; i < grid.rows; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_j = 0;
      for (std::size_t j = 0; j < cols; ++j) {
        const double* xs = grid.x.data() + (i * cols + j) * dim;
        double d2 = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
          double t = xs[c] - x0[c];
          if (!scale.empty()) t *= scale[c];
          d2 += t * t;
        }
        if (d2 < best) {
          best = d2;
          best_j = j;
        }
      }
      out.values[i] = grid.y[i * cols + best_j];
      out.nn_distances[i] = std::sqrt(best);
    }
  }

  std::stable_sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

}  // namespace tailrisk
