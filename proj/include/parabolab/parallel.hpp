#pragma once

#include <cstddef>
#include <functional>

namespace parabolab {

/// Worker cap for parallel loops. 0 means hardware concurrency.
void set_thread_cap(int threads);
int thread_cap();

/// Runs body(i) for i in [0, n). Iterations must be independent; results
/// never depend on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace parabolab
