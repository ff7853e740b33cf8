#ifndef NULLWAVE_PARALLEL_HPP
#define NULLWAVE_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace nullwave {

/// Worker cap: NULLWAVE_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to `workers` threads. Each index is
/// visited exactly once; callers write results into slot i so the output
/// order never depends on scheduling. The first exception thrown by any body
/// is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  std::size_t workers = worker_count());

}  // namespace nullwave

#endif
