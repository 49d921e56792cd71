#pragma once

#include <cstddef>
#include <functional>

namespace lc {

/// Worker count: hardware concurrency, capped by LIENCENTER_THREADS when set.
std::size_t worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Each index is
/// visited exactly once; the first exception thrown is rethrown after all
/// workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lc
