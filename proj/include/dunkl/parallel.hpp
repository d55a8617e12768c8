#pragma once

#include <cstddef>
#include <functional>

namespace dunkl {

/// Worker count: hardware concurrency capped by DUNKL_NUM_THREADS (>= 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n). Each index is handled exactly once; callers
/// write into pre-sized storage so results do not depend on scheduling.
/// The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace dunkl
