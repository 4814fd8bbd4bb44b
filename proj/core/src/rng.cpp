#include "tailrisk/rng.hpp"

#include <bit>

namespace tailrisk {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;
}

RngStream RngStream::derive(std::uint64_t seed,
                            std::initializer_list<std::uint64_t> key) {
  std::uint64_t h = mix64(seed + kGolden);
  for (std::uint64_t k : key) {
    h = mix64(h ^ mix64(k + kGolden));
  }
  RngStream s;
  s.state_ = h;
  s.gamma_ = mix64(h + kGolden) | 1ull;
  return s;
}

std::uint64_t RngStream::next_below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
  for (;;) {
    const std::uint64_t r = next_u64() & mask;
    if (r < n) return r;
  }
}

}  // namespace tailrisk
