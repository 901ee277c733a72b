#pragma once

#include <functional>

namespace mink {

// worker count: hardware concurrency capped by MINKOSCOPE_THREADS (>= 1)
int worker_count();

// runs fn(i) for i in [0, n); chunks across workers when it pays off
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace mink
