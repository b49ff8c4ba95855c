#pragma once

#include <cstddef>
#include <functional>

namespace densekit {

// Worker cap: DENSEKIT_THREADS when set (>= 1), hardware concurrency otherwise.
std::size_t thread_budget();

// Runs fn(i) for i in [0, count) across at most thread_budget() workers.
// Callers own any ordering requirements; results should be written to
// per-index slots so assembly stays deterministic.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn);

} // namespace densekit
