#pragma once

#include <cstdint>
#include <functional>

namespace quadpair {

/// Worker count: explicit override, else QUADPAIR_THREADS, else hardware concurrency.
unsigned thread_count();
void set_thread_count(unsigned n);

/// Splits [begin, end) into contiguous chunks, one per worker; fn(chunk_begin, chunk_end, worker_index).
void parallel_chunks(std::int64_t begin, std::int64_t end,
                     const std::function<void(std::int64_t, std::int64_t, unsigned)>& fn);

/// Runs fn(block) for every block in [0, blocks) on the worker pool. Blocks are fixed by the
/// caller, so per-block results reduced in block order do not depend on the thread count.
void parallel_blocks(std::int64_t blocks, const std::function<void(std::int64_t)>& fn);

/// Number of chunks parallel_chunks will use for a range of this length.
unsigned chunk_count(std::int64_t length);

}  // namespace quadpair
