#pragma once

#include <cstdint>
#include <initializer_list>

namespace tailrisk {

// Counter-based splittable stream. State transitions are integer-only, so
// sequences are identical on every platform. Distinct (seed, key) pairs give
// statistically independent streams; each stream owns both a state and an odd
// increment derived from the key chain.
class RngStream {
 public:
  RngStream() = default;

  static RngStream derive(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> key);

  std::uint64_t next_u64() {
    state_ += gamma_;
    return mix64(state_);
  }

  // Uniform on [0,1) with 53 bits of mantissa entropy.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on {0, ..., n-1}, unbiased (mask rejection).
  std::uint64_t next_below(std::uint64_t n);

  static constexpr std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_ = 0;
  std::uint64_t gamma_ = 0x9E3779B97F4A7C15ull;
};

// Registry of stream-domain tags so independent subsystems never collide on
// the same derived stream.
namespace stream_tag {
inline constexpr std::uint64_t grid_split = 1;  // dataset permutation per split
inline constexpr std::uint64_t sim_grid = 2;    // simulated grid per replication
inline constexpr std::uint64_t sim_flat = 3;    // simulated flat sample per replication
inline constexpr std::uint64_t split_seq = 4;   // per-split seed sequence
inline constexpr std::uint64_t panel = 5;       // synthetic panel generation
}  // namespace stream_tag

}  // namespace tailrisk
