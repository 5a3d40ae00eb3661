#pragma once

#include <cstddef>
#include <functional>

namespace sparse_expand {

// Worker count: hardware concurrency capped by SPARSE_EXPAND_THREADS.
std::size_t thread_count();

// Runs body(i) for i in [0, n). Results must be written to per-index slots;
// the first exception thrown by any worker is rethrown after all joins.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace sparse_expand
