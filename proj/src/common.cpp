// Copyright 2026 the lsc authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#include "lsc/common.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>

namespace lsc {

namespace {
std::atomic<int> g_workers{0};
}

void set_num_workers(int n) { g_workers.store(n < 0 ? 0 : n); }

int num_workers() {
  int n = g_workers.load();
  if (n > 0) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(Index n, const std::function<void(Index, Index, int)>& fn) {
  if (n <= 0) return;
  int workers = std::min<Index>(num_workers(), n);
  if (workers <= 1) {
    fn(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  Index chunk = (n + workers - 1) / workers;
  std::exception_ptr error;
  std::mutex error_mu;
  for (int w = 0; w < workers; ++w) {
    Index begin = w * chunk;
    Index end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end, w] {
      try {
        fn(begin, end, w);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace lsc
