#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace shc {

// Number of workers parallel_for will use: the SHC_THREADS environment
// variable if set (0 or unset means hardware concurrency), further limited
// by set_worker_cap. Always >= 1.
int worker_count();

// Process-wide cap, mainly for tests. 0 restores the default behaviour.
void set_worker_cap(int cap);

namespace detail {
bool in_worker() noexcept;
void run_parallel(int begin, int end, const std::function<void(int)>& body);
}  // namespace detail

// Calls body(i) for each i in [begin, end). Iterations must write to
// disjoint state; under that contract results are identical to the serial
// loop regardless of worker count. Nested calls from inside a worker run
// serially, so callers never deadlock or oversubscribe.
template <typename F>
void parallel_for(int begin, int end, F&& body) {
  if (end <= begin) return;
  const int span = end - begin;
  if (span == 1 || worker_count() == 1 || detail::in_worker()) {
    for (int i = begin; i < end; ++i) body(i);
    return;
  }
  detail::run_parallel(begin, end, std::function<void(int)>(std::forward<F>(body)));
}

}  // namespace shc
