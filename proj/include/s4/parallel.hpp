// Optional node-level parallelism. Every parallel loop writes disjoint output
// slots, so results are identical for any thread count.
#pragma once

#include <cstddef>
#include <functional>

namespace s4::parallel {

// Global worker cap; 1 disables threading entirely (the default).
void set_max_threads(int n);
int max_threads();

// Runs fn(i) for i in [begin, end). Splits into contiguous chunks when the
// range is large enough to be worth it.
void for_each_index(std::size_t begin, std::size_t end,
                    const std::function<void(std::size_t)>& fn,
                    std::size_t grain = 1024);

}  // namespace s4::parallel
