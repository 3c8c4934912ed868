#pragma once

#include <cstddef>
#include <functional>

namespace qsub {

/// Worker count: the THREADS environment variable if set to a positive
/// integer, otherwise the hardware concurrency (at least 1).
unsigned worker_count();

/// Calls fn(i) for i in [0, n) on up to worker_count() threads. Each index is
/// handled exactly once; the first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace qsub
