#pragma once

#include <cstddef>
#include <functional>

namespace csf {

/// Worker count: `requested` if non-zero, else the hardware concurrency (at
/// least 1), in both cases capped by CSF_THREADS when it is a positive
/// integer.
unsigned worker_count(unsigned requested = 0);

/// Runs fn(0) ... fn(n-1) on up to `threads` workers. If any call throws,
/// the exception of the lowest failing index is rethrown after all workers
/// finish, so failures are reported the same way at every thread count.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace csf
