#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tailrisk/dataset.hpp"

namespace tailrisk {

// Rectangular I x J array of (y, x) cells filled row-major from a seeded
// random permutation of a Dataset. Records beyond I*J are discarded for that
// split; across many splits with different seeds no record is systematically
// excluded.
struct ObservationGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t dim = 1;
  std::vector<double> y;  // rows*cols, row-major
  std::vector<double> x;  // rows*cols*dim, row-major
  std::uint64_t seed = 0;

  double y_at(std::size_t i, std::size_t j) const { return y[i * cols + j]; }
  std::span<const double> x_at(std::size_t i, std::size_t j) const {
    return {x.data() + (i * cols + j) * dim, dim};
  }
};

// Induced responses at a conditioning point: one value per grid row (its
// nearest neighbor's y), sorted descending. nn_distances stays in row order.
struct LocalTailSample {
  std::vector<double> x0;
  std::vector<double> values;
  std::vector<double> nn_distances;
};

// i_rows/j_cols of 0 mean "auto": both default to floor(sqrt(N)).
ObservationGrid split_into_grid(const Dataset& data, std::size_t i_rows,
                                std::size_t j_cols, std::uint64_t seed);

// Per row, picks the column minimizing the (optionally coordinate-rescaled)
// Euclidean distance to x0; ties break toward the smallest column index.
LocalTailSample extract_local_sample(const ObservationGrid& grid,
                                     std::span<const double> x0,
                                     std::span<const double> scale = {});

}  // namespace tailrisk
