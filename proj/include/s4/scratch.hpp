// Counting allocator used for all temporary buffers on the fast code paths.
// Gives the benchmark harness a seam to measure peak auxiliary memory without
// touching OS-level RSS.
#pragma once

#include <cstddef>
#include <memory>
#include <vector>

namespace s4::scratch {

void note_alloc(std::size_t bytes);
void note_free(std::size_t bytes);

std::size_t current_bytes();
std::size_t peak_bytes();
// Resets the peak to the current live total.
void reset_peak();

template <class T>
struct CountingAllocator {
  using value_type = T;

  CountingAllocator() = default;
  template <class U>
  CountingAllocator(const CountingAllocator<U>&) {}

  T* allocate(std::size_t n) {
    note_alloc(n * sizeof(T));
    return std::allocator<T>().allocate(n);
  }
  void deallocate(T* p, std::size_t n) {
    note_free(n * sizeof(T));
    std::allocator<T>().deallocate(p, n);
  }

  template <class U>
  bool operator==(const CountingAllocator<U>&) const {
    return true;
  }
};

template <class T>
using vector = std::vector<T, CountingAllocator<T>>;

}  // namespace s4::scratch
