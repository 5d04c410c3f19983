#include "quatsurf/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace qs {

int thread_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    if (const char* env = std::getenv("QUATSURF_THREADS")) {
        int cap = std::atoi(env);
        if (cap > 0) hw = std::min(hw, cap);
    }
    return hw;
}

void parallel_for(int n, const std::function<void(int, int)>& body) {
    int workers = std::min(thread_count(), n);
    if (workers <= 1) {
        body(0, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    int chunk = (n + workers - 1) / workers;
    for (int t = 0; t < workers; ++t) {
        int b = t * chunk;
        int e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back(body, b, e);
    }
    for (auto& th : pool) th.join();
}

}  // namespace qs
