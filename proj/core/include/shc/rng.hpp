#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace shc {

// splitmix64 step; advances `state` and returns the next output.
std::uint64_t splitmix64(std::uint64_t& state);

// Seed for logical stream `stream` under `master`. Distinct streams give
// statistically independent engines, so ensemble iterations can be generated
// in any order (or in parallel) without changing their draws.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

// Deterministic random source. All distributions are implemented here rather
// than with std::uniform_int_distribution and friends, whose outputs differ
// across standard library implementations. Given the same seed this class
// produces the same stream on any conforming compiler.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform on {0, ..., n-1}. Rejection sampling, exactly uniform. n >= 1.
  std::size_t uniform_index(std::size_t n);

  // Uniform on {lo, ..., hi}, inclusive. lo <= hi.
  long uniform_int(long lo, long hi) {
    return lo + static_cast<long>(uniform_index(static_cast<std::size_t>(hi - lo) + 1));
  }

  // Standard normal via Box-Muller; generated in pairs, one cached.
  double normal();

  double normal(double mean, double sd) { return mean + sd * normal(); }

  // k distinct indices from {0, ..., n-1}, in draw order (partial Fisher-Yates).
  std::vector<int> sample_without_replacement(int n, int k);

 private:
  std::mt19937_64 engine_;
  double cached_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace shc
