#pragma once

// Minimal deterministic worker pool. STRONGNL_THREADS caps the worker count;
// tasks get disjoint index ranges, so results land in fixed slots regardless
// of scheduling.

#include <cstddef>
#include <functional>

namespace strongnl {

int worker_count();

// Runs fn(i) for i in [0, n); fn must only write to i-indexed slots.
// Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace strongnl
