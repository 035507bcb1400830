#include <doctest.h>

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "shc/parallel.hpp"

namespace {

// Restores the default worker settings when a test section ends.
struct CapGuard {
  ~CapGuard() { shc::set_worker_cap(0); }
};

}  // namespace

TEST_SUITE("parallel") {

TEST_CASE("worker_count respects the cap") {
  CapGuard guard;
  shc::set_worker_cap(3);
  CHECK(shc::worker_count() <= 3);
  CHECK(shc::worker_count() >= 1);
  shc::set_worker_cap(0);
  CHECK(shc::worker_count() >= 1);
}

TEST_CASE("SHC_THREADS controls the count and rejects garbage") {
  CapGuard guard;
  setenv("SHC_THREADS", "2", 1);
  CHECK(shc::worker_count() == 2);
  setenv("SHC_THREADS", "abc", 1);
  CHECK_THROWS_AS(shc::worker_count(), std::runtime_error);
  setenv("SHC_THREADS", "-1", 1);
  CHECK_THROWS_AS(shc::worker_count(), std::runtime_error);
  unsetenv("SHC_THREADS");
  CHECK(shc::worker_count() >= 1);
}

TEST_CASE("parallel_for matches the serial loop") {
  CapGuard guard;
  const int n = 500;
  std::vector<long> serial(n), parallel(n);
  shc::set_worker_cap(1);
  shc::parallel_for(0, n, [&](int i) { serial[i] = static_cast<long>(i) * i + 3; });
  shc::set_worker_cap(4);
  shc::parallel_for(0, n, [&](int i) { parallel[i] = static_cast<long>(i) * i + 3; });
  CHECK(serial == parallel);
}

TEST_CASE("nested parallel_for runs serially inside workers") {
  CapGuard guard;
  shc::set_worker_cap(4);
  std::vector<int> out(20 * 10, 0);
  shc::parallel_for(0, 20, [&](int i) {
    shc::parallel_for(0, 10, [&](int j) { out[i * 10 + j] = i * 10 + j; });
  });
  for (int v = 0; v < 200; ++v) CHECK(out[v] == v);
}

TEST_CASE("empty and single ranges work") {
  std::vector<int> hits;
  shc::parallel_for(3, 3, [&](int) { hits.push_back(1); });
  CHECK(hits.empty());
  shc::parallel_for(5, 6, [&](int i) { hits.push_back(i); });
  CHECK(hits == std::vector<int>{5});
}

TEST_CASE("exceptions from the body propagate") {
  CapGuard guard;
  shc::set_worker_cap(2);
  CHECK_THROWS_AS(shc::parallel_for(0, 50,
                                    [&](int i) {
                                      if (i == 17) throw std::runtime_error("boom");
                                    }),
                  std::runtime_error);
}

}  // TEST_SUITE
