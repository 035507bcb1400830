#include "shc/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <string>

namespace shc {

namespace {

std::atomic<int> g_worker_cap{0};

int env_thread_request() {
  const char* raw = std::getenv("SHC_THREADS");
  if (raw == nullptr || *raw == '\0') return 0;
  char* end = nullptr;
  const long value = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || value < 0) {
    throw std::runtime_error(std::string("invalid SHC_THREADS value: ") + raw);
  }
  return static_cast<int>(value);
}

thread_local bool t_in_worker = false;

}  // namespace

void set_worker_cap(int cap) { g_worker_cap.store(cap < 0 ? 0 : cap); }

int worker_count() {
  int n = env_thread_request();
  if (n == 0) {
    n = static_cast<int>(std::thread::hardware_concurrency());
    if (n == 0) n = 1;
  }
  const int cap = g_worker_cap.load();
  if (cap > 0 && n > cap) n = cap;
  return n < 1 ? 1 : n;
}

namespace detail {

bool in_worker() noexcept { return t_in_worker; }

void run_parallel(int begin, int end, const std::function<void(int)>& body) {
  const int span = end - begin;
  int workers = worker_count();
  if (workers > span) workers = span;

  std::atomic<int> next{begin};
  std::exception_ptr error;
  std::mutex error_mutex;

  auto drain = [&]() {
    t_in_worker = true;
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= end) break;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        // Keep draining: other iterations may already be running anyway.
      }
    }
    t_in_worker = false;
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
  drain();
  for (auto& t : pool) t.join();

  if (error) std::rethrow_exception(error);
}

}  // namespace detail

}  // namespace shc
