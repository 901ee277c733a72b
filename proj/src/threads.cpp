#include "minkoscope/threads.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mink {

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("MINKOSCOPE_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
    const int workers = std::min(worker_count(), n);
    if (workers <= 1 || n < 64) {
        for (int i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&]() {
            try {
                for (;;) {
                    const int i = next.fetch_add(1);
                    if (i >= n) return;
                    fn(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(n);  // drain remaining work
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace mink
