#include "s4/scratch.hpp"

#include <atomic>

namespace s4::scratch {

namespace {
std::atomic<std::size_t> g_current{0};
std::atomic<std::size_t> g_peak{0};
}  // namespace

void note_alloc(std::size_t bytes) {
  const std::size_t now = g_current.fetch_add(bytes, std::memory_order_relaxed) + bytes;
  std::size_t prev = g_peak.load(std::memory_order_relaxed);
  while (prev < now && !g_peak.compare_exchange_weak(prev, now, std::memory_order_relaxed)) {
  }
}

void note_free(std::size_t bytes) {
  g_current.fetch_sub(bytes, std::memory_order_relaxed);
}

std::size_t current_bytes() { return g_current.load(std::memory_order_relaxed); }

std::size_t peak_bytes() { return g_peak.load(std::memory_order_relaxed); }

void reset_peak() { g_peak.store(g_current.load(std::memory_order_relaxed)); }

}  // namespace s4::scratch
