#pragma once

#include <cstddef>
#include <functional>

namespace hlp {

// HLP_THREADS if set and positive, else the hardware concurrency (at least 1).
std::size_t default_threads();

// Runs fn(i) for i in [0, count) on up to `threads` workers.  Every index is
// run even if some throw; the exception of the lowest failing index is
// rethrown afterwards, so behaviour does not depend on scheduling.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace hlp
