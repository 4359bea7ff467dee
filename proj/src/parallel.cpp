#include "numrange/parallel.hpp"

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace numrange {

namespace {
std::atomic<unsigned> g_jobs{0};
}

void set_default_jobs(unsigned jobs) { g_jobs.store(jobs); }

unsigned default_jobs() {
    unsigned j = g_jobs.load();
    if (j == 0) j = std::thread::hardware_concurrency();
    return j == 0 ? 1 : j;
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                  unsigned jobs) {
    if (count == 0) return;
    unsigned workers = jobs == 0 ? default_jobs() : jobs;
    if (workers > count) workers = static_cast<unsigned>(count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::vector<std::thread> pool;
    pool.reserve(workers);
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::size_t chunk = (count + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        std::size_t lo = static_cast<std::size_t>(w) * chunk;
        std::size_t hi = std::min(count, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi]() {
            try {
                for (std::size_t i = lo; i < hi; ++i) {
                    if (failed.load(std::memory_order_relaxed)) return;
                    fn(i);
                }
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

}  // namespace numrange
