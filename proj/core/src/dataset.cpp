#include "tailrisk/dataset.hpp"

#include <cmath>

#include "tailrisk/error.hpp"

namespace tailrisk {

void Dataset::validate() const {
  if (dim == 0) {
    fail(Errc::dimension_mismatch, "dataset covariate dimension must be >= 1");
  }
  if (x.size() != y.size() * dim) {
    fail(Errc::dimension_mismatch,
         "dataset covariate block does not match record count");
  }
  if (!x_names.empty() && x_names.size() != dim) {
    fail(Errc::dimension_mismatch,
         "dataset column names do not match covariate dimension");
  }
  for (double v : y) {
    if (!std::isfinite(v) || v < 0.0) {
      fail(Errc::invalid_range, "dataset responses must be finite and >= 0");
    }
  }
  for (double v : x) {
    if (!std::isfinite(v)) {
      fail(Errc::invalid_range, "dataset covariates must be finite");
    }
  }
}

Dataset filter_exact(const Dataset& data, std::size_t coord, double value) {
  if (coord >= data.dim) {
    fail(Errc::dimension_mismatch, "filter coordinate out of range");
  }
  Dataset out;
  out.dim = data.dim;
  out.x_names = data.x_names;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data.x[i * data.dim + coord] == value) {
      out.y.push_back(data.y[i]);
      const auto row = data.x_row(i);
      out.x.insert(out.x.end(), row.begin(), row.end());
    }
  }
  return out;
}

Dataset select_coordinates(const Dataset& data,
                           const std::vector<std::size_t>& coords) {
  if (coords.empty()) {
    fail(Errc::dimension_mismatch, "coordinate selection must be nonempty");
  }
  for (std::size_t c : coords) {
    if (c >= data.dim) {
      fail(Errc::dimension_mismatch, "selected coordinate out of range");
    }
  }
  Dataset out;
  out.y = data.y;
  out.dim = coords.size();
  out.x.resize(data.size() * coords.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    for (std::size_t c = 0; c < coords.size(); ++c) {
      out.x[i * coords.size() + c] = data.x[i * data.dim + coords[c]];
    }
  }
  if (!data.x_names.empty()) {
    out.x_names.reserve(coords.size());
    for (std::size_t c : coords) out.x_names.push_back(data.x_names[c]);
  }
  return out;
}

}  // namespace tailrisk
