#pragma once

#include <cstddef>
#include <functional>

namespace divscore {

// Worker count from DIVSCORE_THREADS, else hardware concurrency (≥ 1).
unsigned default_threads();

// Runs fn(i) for i in [0, n) on up to `threads` workers, contiguous chunks per
// worker. Each index must write only its own output slot. If any call throws,
// the exception from the lowest failing index is rethrown after all workers join.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

} // namespace divscore
