#include "quadpair/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace quadpair {

namespace {
std::atomic<unsigned> g_override{0};
}

unsigned thread_count() {
    if (unsigned n = g_override.load(); n > 0) return n;
    if (const char* env = std::getenv("QUADPAIR_THREADS")) {
        try {
            int v = std::stoi(env);
            if (v > 0) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void set_thread_count(unsigned n) { g_override.store(n); }

unsigned chunk_count(std::int64_t length) {
    if (length <= 0) return 0;
    return static_cast<unsigned>(std::min<std::int64_t>(thread_count(), length));
}

void parallel_chunks(std::int64_t begin, std::int64_t end,
                     const std::function<void(std::int64_t, std::int64_t, unsigned)>& fn) {
    const std::int64_t len = end - begin;
    const unsigned workers = chunk_count(len);
    if (workers == 0) return;
    if (workers == 1) {
        fn(begin, end, 0);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        std::int64_t lo = begin + len * w / workers;
        std::int64_t hi = begin + len * (w + 1) / workers;
        pool.emplace_back([&, lo, hi, w] {
            try {
                fn(lo, hi, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

void parallel_blocks(std::int64_t blocks, const std::function<void(std::int64_t)>& fn) {
    const unsigned workers = chunk_count(blocks);
    if (workers == 0) return;
    if (workers == 1) {
        for (std::int64_t b = 0; b < blocks; ++b) fn(b);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::int64_t b = next++; b < blocks && !failed; b = next++) fn(b);
            } catch (...) {
                errors[w] = std::current_exception();
                failed = true;
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

}  // namespace quadpair
