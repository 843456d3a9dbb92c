#pragma once

#include <cstddef>
#include <functional>

namespace sparsent {

// Calls body(i) for i in [0, n) on up to `threads` threads. Each index runs
// exactly once; callers write results to per-index slots. The first
// exception thrown by any body is rethrown after all threads join.
void parallel_for(std::size_t n, std::size_t threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace sparsent
