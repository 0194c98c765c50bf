#pragma once

#include <cstddef>
#include <functional>

namespace dirac {

// Runs fn(0..n-1) over a small thread pool.  The worker count is capped by the
// DIRAC_PAIRINGS_THREADS environment variable (>= 1); results must be written
// to preallocated slots so the outcome does not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

std::size_t worker_count();

}  // namespace dirac
