#pragma once

#include <cstddef>
#include <functional>

namespace polymat {

// Number of worker threads used by parallel_for: hardware concurrency,
// capped by the POLYMAT_THREADS environment variable when set.
std::size_t worker_count();

// Runs fn(i) for i in [0, n). Work is split into contiguous chunks; the
// caller is responsible for making iterations independent. Results must not
// depend on the thread count (callers either write to disjoint slots or
// reduce in index order afterwards).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace polymat
