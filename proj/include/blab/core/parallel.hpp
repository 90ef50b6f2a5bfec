#pragma once

#include <cstddef>
#include <functional>

namespace blab {

// Runs fn(i) for i in [0, n) on up to `threads` workers with a static block
// partition. Each index is handled exactly once; callers write results into
// preallocated slots so the outcome does not depend on the thread count.
// The first exception thrown by any worker is rethrown after all join.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace blab
