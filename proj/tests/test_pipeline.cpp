#include <doctest.h>

#include <array>
#include <numeric>
#include <vector>

#include "shc/datasets.hpp"
#include "shc/kmeans.hpp"
#include "shc/parallel.hpp"
#include "shc/pipeline.hpp"
#include "shc/rng.hpp"

using shc::BasalRule;
using shc::Clustering;
using shc::Dataset;
using shc::DissimilarityMatrix;
using shc::DissimKind;
using shc::EnsembleConfig;
using shc::EnsembleResult;
using shc::GrowPruneResult;
using shc::SetDissimilarity;
using shc::ShcConfig;

namespace {

struct CapGuard {
  explicit CapGuard(int cap) { shc::set_worker_cap(cap); }
  ~CapGuard() { shc::set_worker_cap(0); }
};

Dataset random_points(int n, uint64_t seed) {
  shc::Rng rng(seed);
  std::vector<double> values;
  for (int i = 0; i < n * 2; ++i) values.push_back(rng.normal());
  return Dataset(values, n, 2);
}

// 1-D line with two triples and one far outlier; distances are generic
// enough to make the merge tree unambiguous.
DissimilarityMatrix line_with_outlier() {
  return DissimilarityMatrix::euclidean(Dataset({0, 1, 2, 10, 11, 12, 30}, 7, 1));
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("hybrid iteration with kb == kl is plain kmeans") {
  const Dataset d = random_points(20, 9);
  const Clustering direct = shc::kmeans(d, 5, 42).clustering;
  const Clustering hybrid = shc::hybrid_iteration(d, 5, 5, SetDissimilarity::percentile20(), 42);
  CHECK(hybrid == direct);
}

TEST_CASE("hybrid iteration merges basal clusters down to kb") {
  // Two tight pairs; with every point basal, merging to 2 recovers the pairs.
  const Dataset d({0, 0, 0, 1, 10, 0, 10, 1}, 4, 2);
  const DissimilarityMatrix euclid = DissimilarityMatrix::euclidean(d);
  const std::vector<int> init{0, 1, 2, 3};
  const Clustering c =
      shc::hybrid_iteration(d, euclid, 2, SetDissimilarity::minimum(), init);
  CHECK(shc::same_partition(c, Clustering({1, 1, 2, 2})));
  const Clustering cp =
      shc::hybrid_iteration(d, euclid, 2, SetDissimilarity::percentile20(), init);
  CHECK(shc::same_partition(cp, Clustering({1, 1, 2, 2})));
}

TEST_CASE("hybrid iteration rejects bad shapes") {
  const Dataset d = random_points(6, 1);
  const DissimilarityMatrix euclid = DissimilarityMatrix::euclidean(d);
  const DissimilarityMatrix wrong = DissimilarityMatrix::euclidean(random_points(5, 1));
  CHECK_THROWS_AS(shc::hybrid_iteration(d, euclid, 0, 3, SetDissimilarity::minimum(), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(shc::hybrid_iteration(d, euclid, 4, 3, SetDissimilarity::minimum(), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(shc::hybrid_iteration(d, euclid, 2, 7, SetDissimilarity::minimum(), 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(shc::hybrid_iteration(d, wrong, 2, 3, SetDissimilarity::minimum(), 1),
                  std::invalid_argument);
}

TEST_CASE("hybrid iteration commutes with relabeling the points") {
  const Dataset d = random_points(10, 314);
  const DissimilarityMatrix euclid = DissimilarityMatrix::euclidean(d);
  const std::vector<int> init{0, 3, 7};
  const Clustering original =
      shc::hybrid_iteration(d, euclid, 2, SetDissimilarity::percentile20(), init);

  shc::Rng rng(8);
  const std::vector<int> perm = rng.sample_without_replacement(10, 10);
  std::vector<int> inverse(10);
  for (int i = 0; i < 10; ++i) inverse[perm[i]] = i;

  std::vector<double> values;
  for (int i = 0; i < 10; ++i) {
    values.push_back(d.coord(perm[i], 0));
    values.push_back(d.coord(perm[i], 1));
  }
  const Dataset shuffled(values, 10, 2);
  std::vector<int> init_shuffled;
  for (int j : init) init_shuffled.push_back(inverse[j]);
  const Clustering permuted = shc::hybrid_iteration(
      shuffled, DissimilarityMatrix::euclidean(shuffled), 2,
      SetDissimilarity::percentile20(), init_shuffled);

  std::vector<int> unshuffled(10);
  for (int i = 0; i < 10; ++i) unshuffled[perm[i]] = permuted.cluster_of(i);
  CHECK(shc::same_partition(Clustering(unshuffled), original));
}

TEST_CASE("ensemble draws counts inside the configured ranges") {
  const Dataset d = random_points(30, 21);
  EnsembleConfig cfg;
  cfg.iterations = 24;
  cfg.k_max = 25;
  cfg.seed = 5;
  const EnsembleResult r = shc::ensemble(d, cfg);
  REQUIRE(r.basal_counts.size() == 24);
  REQUIRE(r.target_counts.size() == 24);
  for (int t = 0; t < 24; ++t) {
    CHECK(r.basal_counts[t] >= 5);  // floor(30/6)
    CHECK(r.basal_counts[t] <= 7);  // floor(30/4)
    CHECK(r.target_counts[t] >= 2);
    CHECK(r.target_counts[t] <= r.basal_counts[t]);
  }
  CHECK(r.membership.rows() == 30);
  CHECK(r.membership.block_count() == 24);
  CHECK(r.membership.total_columns() ==
        std::accumulate(r.target_counts.begin(), r.target_counts.end(), 0));
  CHECK(r.distances.kind() == DissimKind::hamming);
}

TEST_CASE("ensemble respects a fixed basal count") {
  const Dataset d = random_points(20, 3);
  EnsembleConfig cfg;
  cfg.iterations = 10;
  cfg.k_max = 4;
  cfg.basal = BasalRule::fixed(6);
  const EnsembleResult r = shc::ensemble(d, cfg);
  for (int t = 0; t < 10; ++t) {
    CHECK(r.basal_counts[t] == 6);
    CHECK(r.target_counts[t] >= 2);
    CHECK(r.target_counts[t] <= 4);
  }
}

TEST_CASE("single-run ensemble distances are 0 or 2") {
  const Dataset d = random_points(12, 77);
  EnsembleConfig cfg;
  cfg.iterations = 1;
  cfg.k_max = 2;
  cfg.basal = BasalRule::fixed(4);
  const EnsembleResult r = shc::ensemble(d, cfg);
  bool saw_two = false;
  for (int i = 0; i < 12; ++i) {
    for (int j = i + 1; j < 12; ++j) {
      const double v = r.distances.at(i, j);
      CHECK((v == 0.0 || v == 2.0));
      saw_two = saw_two || v == 2.0;
    }
  }
  CHECK(saw_two);
}

TEST_CASE("ensemble is deterministic in the seed and thread count") {
  const Dataset d = random_points(24, 500);
  EnsembleConfig cfg;
  cfg.iterations = 8;
  cfg.k_max = 6;
  cfg.basal = BasalRule::fixed(8);
  cfg.seed = 99;

  std::vector<double> serial, threaded;
  {
    CapGuard guard(1);
    serial = shc::ensemble(d, cfg).distances.values();
  }
  {
    CapGuard guard(4);
    threaded = shc::ensemble(d, cfg).distances.values();
  }
  CHECK(serial == threaded);

  cfg.seed = 100;
  CHECK(shc::ensemble(d, cfg).distances.values() != serial);
}

TEST_CASE("ensemble configs are validated") {
  EnsembleConfig cfg;
  CHECK_THROWS_AS(shc::validate(cfg, 1), std::invalid_argument);
  CHECK_THROWS_AS(shc::validate(cfg, 11), std::invalid_argument);  // n/6 < 2
  CHECK_NOTHROW(shc::validate(cfg, 12));

  cfg.iterations = 0;
  CHECK_THROWS_AS(shc::validate(cfg, 20), std::invalid_argument);
  cfg.iterations = 1;
  cfg.k_max = 1;
  CHECK_THROWS_AS(shc::validate(cfg, 20), std::invalid_argument);
  cfg.k_max = 2;
  cfg.basal = BasalRule::fixed(1);
  CHECK_THROWS_AS(shc::validate(cfg, 20), std::invalid_argument);
  cfg.basal = BasalRule::fixed(21);
  CHECK_THROWS_AS(shc::validate(cfg, 20), std::invalid_argument);
  cfg.basal = BasalRule::fixed(4);
  CHECK_NOTHROW(shc::validate(cfg, 8));  // fixed rule lifts the n >= 12 floor
}

TEST_CASE("shc configs are validated") {
  ShcConfig cfg;
  cfg.ensemble.basal = BasalRule::fixed(5);
  cfg.k = 1;
  CHECK_THROWS_AS(shc::validate(cfg, 20), std::invalid_argument);
  cfg.k = 26;  // above k_max = 25
  CHECK_THROWS_AS(shc::validate(cfg, 20), std::invalid_argument);
  cfg.k = 20;  // k == n
  CHECK_THROWS_AS(shc::validate(cfg, 20), std::invalid_argument);
  cfg.k = 3;
  cfg.alpha = 0.0;
  CHECK_THROWS_AS(shc::validate(cfg, 20), std::invalid_argument);
  cfg.alpha = 1.0;
  CHECK_THROWS_AS(shc::validate(cfg, 20), std::invalid_argument);
  cfg.alpha = 0.05;
  CHECK_NOTHROW(shc::validate(cfg, 20));
}

TEST_CASE("grow and prune keeps an outlier separate when it is large") {
  // Two triples and an outlier. The grown cut has 3 clusters; with
  // alpha = 0.05 nothing is small (0.05 * 7 < 1), so the three cores merge
  // back to k = 2 and the outlier survives as its own cluster.
  const GrowPruneResult r = shc::grow_and_prune(line_with_outlier(), 2, 0.05);
  CHECK(r.k_star == 3);
  CHECK(r.large == 3);
  CHECK(r.attached == 0);
  CHECK(r.alpha_used == 0.05);
  CHECK(r.clustering.assignment() == std::vector<int>{1, 1, 1, 1, 1, 1, 2});
}

TEST_CASE("grow and prune attaches a small outlier to the nearest core") {
  // With alpha = 0.2 the singleton is small (0.2 * 7 = 1.4) and joins the
  // cluster of its nearest point, the triple at 10..12.
  const GrowPruneResult r = shc::grow_and_prune(line_with_outlier(), 2, 0.2);
  CHECK(r.k_star == 3);
  CHECK(r.large == 2);
  CHECK(r.attached == 1);
  CHECK(r.alpha_used == 0.2);
  CHECK(r.clustering.assignment() == std::vector<int>{1, 1, 1, 2, 2, 2, 2});
}

TEST_CASE("grow and prune halves alpha until k cores remain") {
  // alpha = 0.9 marks every cluster small; halving twice (0.45, 0.225)
  // leaves the two triples large.
  const GrowPruneResult r = shc::grow_and_prune(line_with_outlier(), 2, 0.9);
  CHECK(r.large == 2);
  CHECK(r.alpha_used == doctest::Approx(0.225));
  CHECK(r.clustering.assignment() == std::vector<int>{1, 1, 1, 2, 2, 2, 2});
}

TEST_CASE("equal merge heights grow nothing") {
  // All pairwise distances equal: every branch length at the k-cut is zero,
  // the cut level equals H_k, and k_star stays at k.
  const int n = 5;
  std::vector<double> values(n * n, 3.0);
  for (int i = 0; i < n; ++i) values[i * n + i] = 0.0;
  const DissimilarityMatrix flat(n, values, DissimKind::precomputed);
  const GrowPruneResult r = shc::grow_and_prune(flat, 2, 0.05);
  CHECK(r.k_star == 2);
  CHECK(r.large == 2);
  CHECK(r.attached == 0);
  CHECK(r.clustering.cluster_count() == 2);
}

TEST_CASE("grow and prune validates its arguments") {
  const DissimilarityMatrix base = line_with_outlier();
  CHECK_THROWS_AS(shc::grow_and_prune(base, 1, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(shc::grow_and_prune(base, 7, 0.05), std::invalid_argument);
  CHECK_THROWS_AS(shc::grow_and_prune(base, 2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(shc::grow_and_prune(base, 2, 1.0), std::invalid_argument);
}

TEST_CASE("full pipeline recovers well-separated blobs") {
  const std::vector<int> counts{12, 12, 12};
  const std::vector<std::array<double, 2>> centers{{0, 0}, {20, 0}, {10, 17}};
  const Dataset d = shc::gen_blobs(counts, centers, 0.5, 11);
  REQUIRE(d.size() == 36);
  ShcConfig cfg;
  cfg.ensemble.iterations = 20;
  cfg.ensemble.seed = 7;
  cfg.k = 3;
  const shc::ShcResult r = shc::shc_cluster(d, cfg);
  CHECK(r.clustering.cluster_count() == 3);
  CHECK(shc::same_partition(r.clustering, Clustering(d.labels())));
  CHECK(r.basal_counts.size() == 20);
  CHECK(r.stage.clustering == r.clustering);
}

TEST_CASE("full pipeline is reproducible") {
  const std::vector<int> counts{10, 10};
  const std::vector<std::array<double, 2>> centers{{0, 0}, {12, 0}};
  const Dataset d = shc::gen_blobs(counts, centers, 0.6, 4);
  ShcConfig cfg;
  cfg.ensemble.iterations = 12;
  cfg.ensemble.basal = BasalRule::fixed(5);
  cfg.ensemble.seed = 31;
  cfg.k = 2;
  const shc::ShcResult a = shc::shc_cluster(d, cfg);
  const shc::ShcResult b = shc::shc_cluster(d, cfg);
  CHECK(a.clustering == b.clustering);
  CHECK(a.stage.k_star == b.stage.k_star);
  CHECK(a.target_counts == b.target_counts);
}

}  // TEST_SUITE
