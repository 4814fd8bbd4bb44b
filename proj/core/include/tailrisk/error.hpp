#pragma once

#include <stdexcept>
#include <string>

namespace tailrisk {

// Error categories. `usage` maps to CLI exit code 2, everything else to 1.
enum class Errc {
  usage,
  schema,
  empty_data,
  insufficient_data,
  grid_sizing,
  dimension_mismatch,
  nonpositive_threshold,
  degenerate_sample,
  insufficient_neighborhood,
  degenerate_quantiles,
  invalid_range,
  too_many_failed_splits,
};

constexpr const char* errc_name(Errc c) {
  switch (c) {
    case Errc::usage: return "usage";
    case Errc::schema: return "schema";
    case Errc::empty_data: return "empty_data";
    case Errc::insufficient_data: return "insufficient_data";
    case Errc::grid_sizing: return "grid_sizing";
    case Errc::dimension_mismatch: return "dimension_mismatch";
    case Errc::nonpositive_threshold: return "nonpositive_threshold";
    case Errc::degenerate_sample: return "degenerate_sample";
    case Errc::insufficient_neighborhood: return "insufficient_neighborhood";
    case Errc::degenerate_quantiles: return "degenerate_quantiles";
    case Errc::invalid_range: return "invalid_range";
    case Errc::too_many_failed_splits: return "too_many_failed_splits";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace tailrisk
