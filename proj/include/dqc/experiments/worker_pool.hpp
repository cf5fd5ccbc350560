#pragma once

#include <cstddef>
#include <functional>

namespace dqc::experiments {

/// Runs fn(0..n-1) on up to `threads` workers (0 = hardware concurrency).
/// Tasks write into their own slots, so output order never depends on
/// scheduling. The exception of the lowest failing index is rethrown after
/// all workers stop.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

}  // namespace dqc::experiments
