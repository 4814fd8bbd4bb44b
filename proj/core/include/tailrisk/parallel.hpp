#pragma once

#include <cstddef>
#include <functional>

namespace tailrisk {

// Worker count resolution: explicit request > TAILRISK_THREADS env var >
// hardware concurrency. Always >= 1.
unsigned resolve_threads(unsigned requested);

// Runs chunk_fn(begin, end) over a partition of [0, n) into contiguous
// chunks, one per worker. Callers key all output by index, so results are
// identical for every thread count; only wall time changes.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t, std::size_t)>& chunk_fn);

}  // namespace tailrisk
