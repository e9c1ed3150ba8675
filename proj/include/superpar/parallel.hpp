#pragma once

#include <cstddef>
#include <functional>

namespace superpar {

/// Worker count: set_threads() if called, else SUPERPAR_THREADS, else the
/// hardware concurrency.
int thread_count();
void set_threads(int n);

/// Splits [0, n) into contiguous chunks and runs fn(begin, end) on each in
/// its own thread. The first exception thrown by a worker is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace superpar
