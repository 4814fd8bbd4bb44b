#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tailrisk {

// Flat cross-sectional sample: response y[i] paired with covariate row
// x[i*dim .. i*dim+dim). y is nonnegative; tail observations must be positive
// but the bulk may touch zero.
struct Dataset {
  std::vector<double> y;
  std::vector<double> x;  // row-major, size() * dim entries
  std::size_t dim = 1;
  std::vector<std::string> x_names;  // optional; size dim when present

  std::size_t size() const { return y.size(); }

  std::span<const double> x_row(std::size_t i) const {
    return {x.data() + i * dim, dim};
  }

  // Shape and finiteness checks; throws on violation.
  void validate() const;
};

// Rows whose coordinate `coord` equals `value` exactly. Intended for discrete
// covariates (age, gender) ahead of splitting.
Dataset filter_exact(const Dataset& data, std::size_t coord, double value);

// Projection onto a subset of coordinates, in the given order.
Dataset select_coordinates(const Dataset& data,
                           const std::vector<std::size_t>& coords);

}  // namespace tailrisk
