#pragma once

#include <cstddef>
#include <functional>

namespace conifold {

// Worker count: CONIFOLD_FLOWS_THREADS if set and positive, else hardware concurrency.
unsigned thread_count();

// Runs body(i) for i in [0, n). Exceptions from workers are rethrown in the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace conifold
