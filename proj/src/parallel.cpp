#include "zsnft/parallel.hpp"

#include <atomic>
#include <mutex>
#include <cstdlib>
#include <thread>
#include <vector>

namespace zsnft {

namespace {

unsigned initial_thread_count() {
  if (const char* env = std::getenv("ZSNFT_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  return 0;  // auto
}

std::atomic<unsigned> g_threads{initial_thread_count()};

unsigned effective_threads() {
  unsigned n = g_threads.load();
  if (n == 0) {
    n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
  }
  return n;
}

}  // namespace

unsigned thread_count() { return effective_threads(); }

void set_thread_count(unsigned n) { g_threads.store(n); }

namespace {
// One level of parallelism only: loops issued from inside a worker run
// serially. The work partition never depends on this, only the schedule.
thread_local bool t_inside_worker = false;
}  // namespace

void parallel_for(std::size_t n_items, const std::function<void(std::size_t)>& fn) {
  const unsigned nt = std::min<std::size_t>(effective_threads(), n_items);
  if (t_inside_worker || nt <= 1 || n_items <= 1) {
    for (std::size_t i = 0; i < n_items; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mtx;
  auto worker = [&] {
    t_inside_worker = true;
    try {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n_items) break;
        fn(i);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mtx);
      if (!error) error = std::current_exception();
      next.store(n_items);  // drain remaining work
    }
    t_inside_worker = false;
  };
  std::vector<std::thread> pool;
  pool.reserve(nt - 1);
  for (unsigned t = 0; t + 1 < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

void parallel_for_blocks(std::size_t n, std::size_t block,
                         const std::function<void(std::size_t, std::size_t)>& fn) {
  if (block == 0) block = 1;
  const std::size_t n_blocks = (n + block - 1) / block;
  parallel_for(n_blocks, [&](std::size_t b) {
    const std::size_t begin = b * block;
    fn(begin, std::min(n, begin + block));
  });
}

}  // namespace zsnft
