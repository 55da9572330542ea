#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace mkan::detail {

// Runs fn(chunk_index) for every chunk in [0, num_chunks). Chunks are claimed
// through an atomic counter; fn must only write state owned by its chunk, so
// the combined result is independent of the thread count.
template <typename Fn>
void for_each_chunk(int threads, std::size_t num_chunks, Fn&& fn) {
    if (threads <= 1 || num_chunks <= 1) {
        for (std::size_t c = 0; c < num_chunks; ++c) fn(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
        while (true) {
            std::size_t c = next.fetch_add(1);
            if (c >= num_chunks) return;
            try {
                fn(c);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    int n = threads < static_cast<int>(num_chunks) ? threads : static_cast<int>(num_chunks);
    pool.reserve(static_cast<std::size_t>(n));
    for (int t = 0; t < n; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}
