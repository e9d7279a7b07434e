#include "bergman/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace bergman {
namespace {

std::atomic<unsigned> g_threads{0};
thread_local bool t_in_parallel = false;  // nested loops run serially

struct RegionGuard {
    bool previous;
    RegionGuard() : previous(t_in_parallel) { t_in_parallel = true; }
    ~RegionGuard() { t_in_parallel = previous; }
};

}  // namespace

void set_thread_count(unsigned count) { g_threads.store(count); }

unsigned thread_count() {
    const unsigned requested = g_threads.load();
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, std::size_t chunk,
                  const std::function<void(std::size_t, std::size_t)>& body) {
    if (n == 0) return;
    if (chunk == 0) chunk = 1;
    const std::size_t chunks = (n + chunk - 1) / chunk;
    const unsigned workers =
        static_cast<unsigned>(std::min<std::size_t>(thread_count(), chunks));
    if (workers <= 1 || t_in_parallel) {
        for (std::size_t c = 0; c < chunks; ++c) {
            body(c * chunk, std::min(n, (c + 1) * chunk));
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        RegionGuard guard;
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= chunks) return;
            try {
                body(c * chunk, std::min(n, (c + 1) * chunk));
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(chunks);
                return;
            }
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned t = 1; t < workers; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

}  // namespace bergman
