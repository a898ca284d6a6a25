#pragma once

#include <cstddef>
#include <functional>

namespace zsnft {

/// Worker-thread count used by the parallel loops. 0 means "decide from
/// hardware_concurrency"; the initial value also honors ZSNFT_THREADS.
unsigned thread_count();
void set_thread_count(unsigned n);

/// Run fn(i) for i in [0, n_items) across worker threads. Work items must be
/// independent; the partition of items is fixed, so numerical results do not
/// depend on the thread count.
void parallel_for(std::size_t n_items, const std::function<void(std::size_t)>& fn);

/// Split [0, n) into contiguous blocks of `block` items and run
/// fn(begin, end) per block. Block boundaries depend only on (n, block).
void parallel_for_blocks(std::size_t n, std::size_t block,
                         const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace zsnft
