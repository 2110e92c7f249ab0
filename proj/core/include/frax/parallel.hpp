#pragma once

#include <cstddef>
#include <functional>

namespace frax {

// Worker count: FRAX_THREADS if set (>= 1), else hardware concurrency.
std::size_t thread_budget();

// Runs body(i) for i in [0, count). Each index is executed exactly once;
// callers write into per-index slots and reduce afterwards in index order,
// so results do not depend on scheduling.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace frax
