#pragma once

#include <cstddef>
#include <functional>

namespace oscillat {

/// Number of worker threads: hardware concurrency, capped by the
/// OSCILLAT_THREADS environment variable when it is set to a positive integer.
std::size_t worker_count();

/// Runs body(i) for every i in [0, n). Callers write into per-index slots and
/// reduce afterwards in index order, so results do not depend on thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace oscillat
