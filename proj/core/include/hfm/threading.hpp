#pragma once

#include <cstddef>
#include <exception>
#include <functional>

namespace hfm {

// Worker count used by the library's internal parallel loops. Results never
// depend on it: every loop writes per-index slots and reduces them in index
// order afterwards.
void set_thread_count(int n);
int thread_count();

// Calls fn(i) for i in [0, n), spread over thread_count() workers. If any
// call throws, the exception from the lowest failing index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace hfm
