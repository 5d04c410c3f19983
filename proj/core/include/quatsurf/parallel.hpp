#pragma once

#include <functional>

namespace qs {

// Number of worker threads: hardware concurrency capped by QUATSURF_THREADS.
int thread_count();

// Splits [0, n) into contiguous ranges and runs body(begin, end) on each.
void parallel_for(int n, const std::function<void(int, int)>& body);

}  // namespace qs
