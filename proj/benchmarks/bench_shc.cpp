// Microbenchmarks for the hot paths: pairwise distances, Lloyd iterations,
// agglomeration under both set-dissimilarity kinds, Hamming accumulation,
// and the full pipeline at a small ensemble size.

#include <benchmark/benchmark.h>

#include <array>
#include <cstdint>
#include <vector>

#include "shc/datasets.hpp"
#include "shc/dissimilarity.hpp"
#include "shc/kmeans.hpp"
#include "shc/linkage.hpp"
#include "shc/membership.hpp"
#include "shc/pipeline.hpp"
#include "shc/rng.hpp"

namespace {

shc::Dataset random_points(int n, int m, std::uint64_t seed) {
  shc::Rng rng(seed);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n) * m);
  for (int i = 0; i < n * m; ++i) values.push_back(rng.normal());
  return shc::Dataset(std::move(values), n, m);
}

void BM_euclidean_matrix(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const shc::Dataset d = random_points(n, 8, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shc::DissimilarityMatrix::euclidean(d));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_euclidean_matrix)->Arg(100)->Arg(300)->Arg(1000)->Complexity();

void BM_kmeans(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const shc::Dataset d = random_points(n, 2, 2);
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(shc::kmeans(d, n / 5, ++seed));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_kmeans)->Arg(100)->Arg(300)->Arg(1000)->Complexity();

void BM_single_linkage_min(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const shc::DissimilarityMatrix base =
      shc::DissimilarityMatrix::euclidean(random_points(n, 2, 3));
  for (auto _ : state) {
    benchmark::DoNotOptimize(shc::single_linkage(base, shc::SetDissimilarity::minimum()));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_single_linkage_min)->Arg(100)->Arg(300)->Arg(600)->Complexity();

void BM_single_linkage_p20(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const shc::DissimilarityMatrix base =
      shc::DissimilarityMatrix::euclidean(random_points(n, 2, 4));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        shc::single_linkage(base, shc::SetDissimilarity::percentile20()));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_single_linkage_p20)->Arg(50)->Arg(100)->Arg(200)->Complexity();

void BM_hamming(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  shc::Rng rng(5);
  std::vector<shc::Clustering> parts;
  for (int b = 0; b < 200; ++b) {
    std::vector<int> assign(n);
    for (int i = 0; i < n; ++i) assign[i] = 1 + static_cast<int>(rng.uniform_index(20));
    parts.emplace_back(std::move(assign));
  }
  const shc::MembershipMatrix m = shc::membership_matrix(parts);
  for (auto _ : state) {
    benchmark::DoNotOptimize(shc::hamming_dissimilarity(m));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_hamming)->Arg(100)->Arg(300)->Arg(600)->Complexity();

void BM_pipeline(benchmark::State& state) {
  const int n_per_arm = static_cast<int>(state.range(0));
  const shc::Dataset d = shc::gen_spiral(n_per_arm, 0.005, 6);
  shc::ShcConfig cfg;
  cfg.k = 3;
  cfg.ensemble.iterations = 25;
  for (auto _ : state) {
    cfg.ensemble.seed += 1;
    benchmark::DoNotOptimize(shc::shc_cluster(d, cfg));
  }
}
BENCHMARK(BM_pipeline)->Arg(30)->Arg(60)->Arg(100)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
