#pragma once

#include <cstddef>
#include <functional>

namespace tweetspam {

// Process-wide cap on worker threads; 0 means hardware concurrency.
void set_max_threads(std::size_t threads);
std::size_t max_threads();

// Runs body(i) for i in [0, n). Each index is executed exactly once; callers
// write results into pre-sized slots so output order never depends on
// scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tweetspam
