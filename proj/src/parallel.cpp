#include "s4/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace s4::parallel {

namespace {
std::atomic<int> g_max_threads{1};
}

void set_max_threads(int n) { g_max_threads.store(n < 1 ? 1 : n); }

int max_threads() { return g_max_threads.load(); }

void for_each_index(std::size_t begin, std::size_t end,
                    const std::function<void(std::size_t)>& fn,
                    std::size_t grain) {
  const std::size_t count = end > begin ? end - begin : 0;
  const int workers = std::min<std::size_t>(max_threads(), count / std::max<std::size_t>(grain, 1));
  if (workers <= 1) {
    for (std::size_t i = begin; i < end; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = begin + static_cast<std::size_t>(w) * chunk;
    const std::size_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace s4::parallel
