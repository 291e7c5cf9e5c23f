#include "pforge/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pforge {

unsigned default_thread_count() {
    if (const char* env = std::getenv("PACKING_FORGE_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_chunks(std::size_t count, std::size_t chunk_size, unsigned threads,
                     const std::function<void(std::size_t, std::size_t)>& fn) {
    if (count == 0) return;
    if (chunk_size == 0) chunk_size = 1;
    const std::size_t n_chunks = (count + chunk_size - 1) / chunk_size;

    if (threads <= 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            const std::size_t begin = c * chunk_size;
            fn(begin, std::min(begin + chunk_size, count));
        }
        return;
    }

    std::atomic<std::size_t> next{0};
    std::mutex err_mutex;
    std::size_t err_chunk = n_chunks;
    std::exception_ptr err;

    auto worker = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
            if (c >= n_chunks) return;
            try {
                const std::size_t begin = c * chunk_size;
                fn(begin, std::min(begin + chunk_size, count));
            } catch (...) {
                std::lock_guard lock(err_mutex);
                if (c < err_chunk) {
                    err_chunk = c;
                    err = std::current_exception();
                }
            }
        }
    };

    const unsigned n_workers = static_cast<unsigned>(
        std::min<std::size_t>(threads, n_chunks));
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    if (err) std::rethrow_exception(err);
}

}  // namespace pforge
