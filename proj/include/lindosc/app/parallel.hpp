#pragma once

#include <cstddef>
#include <functional>

namespace lindosc::app {

/// LINDOSC_THREADS when set to a positive integer, else the hardware
/// concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for i in [0, n) on up to worker_count() threads. Results must
/// go to per-index slots; the exception of the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lindosc::app
