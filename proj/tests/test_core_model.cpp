#include <doctest.h>

#include <cmath>
#include <vector>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "shc/clustering.hpp"
#include "shc/dataset.hpp"
#include "shc/dendrogram.hpp"
#include "shc/dissimilarity.hpp"
#include "shc/membership.hpp"
#include "shc/parallel.hpp"
#include "shc/rng.hpp"

using shc::Clustering;
using shc::Dataset;
using shc::Dendrogram;
using shc::DissimilarityMatrix;
using shc::DissimKind;
using shc::MembershipMatrix;
using shc::Merge;

TEST_SUITE("core_model") {

TEST_CASE("Dataset validates shape and finiteness") {
  CHECK_THROWS_AS(Dataset({1.0, 2.0}, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(Dataset({}, 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(Dataset({1.0, std::nan("")}, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(Dataset({1.0, 2.0, 3.0}, 3, 1, std::vector<int>{1, 2}),
                  std::invalid_argument);

  const Dataset d({0.0, 0.0, 3.0, 4.0}, 2, 2);
  CHECK(d.size() == 2);
  CHECK(d.dim() == 2);
  CHECK(shc::squared_distance(d, 0, 1) == doctest::Approx(25.0));
  CHECK(d.coord(1, 0) == 3.0);
}

TEST_CASE("Dataset normalizes labels to 1..K") {
  const Dataset d({1.0, 2.0, 3.0}, 3, 1, std::vector<int>{5, 5, 9});
  CHECK(d.label_count() == 2);
  CHECK(d.labels() == std::vector<int>{1, 1, 2});

  const Dataset dense({1.0, 2.0, 3.0}, 3, 1, std::vector<int>{2, 1, 2});
  CHECK(dense.label_count() == 2);
  CHECK(dense.labels() == std::vector<int>{2, 1, 2});
}

TEST_CASE("Clustering densifies ids and reports members") {
  const Clustering c({2, 7, 2});
  CHECK(c.cluster_count() == 2);
  CHECK(c.assignment() == std::vector<int>{1, 2, 1});
  CHECK(c.members() == std::vector<std::vector<int>>{{0, 2}, {1}});
  CHECK(c.sizes() == std::vector<int>{2, 1});

  const Clustering dense({2, 1, 2});
  CHECK(dense.assignment() == std::vector<int>{2, 1, 2});

  CHECK_THROWS_AS(Clustering({}), std::invalid_argument);
}

TEST_CASE("same_partition ignores cluster numbering") {
  CHECK(shc::same_partition(Clustering({1, 1, 2}), Clustering({2, 2, 1})));
  CHECK_FALSE(shc::same_partition(Clustering({1, 1, 2}), Clustering({1, 2, 2})));
  CHECK_FALSE(shc::same_partition(Clustering({1, 1, 2}), Clustering({1, 1, 1})));
}

TEST_CASE("DissimilarityMatrix validates symmetry, diagonal and sign") {
  CHECK_THROWS_AS(DissimilarityMatrix(2, {0, 1, 2, 0}, DissimKind::precomputed),
                  std::invalid_argument);
  CHECK_THROWS_AS(DissimilarityMatrix(2, {1, 1, 1, 0}, DissimKind::precomputed),
                  std::invalid_argument);
  CHECK_THROWS_AS(DissimilarityMatrix(2, {0, -1, -1, 0}, DissimKind::precomputed),
                  std::invalid_argument);
  const DissimilarityMatrix ok(2, {0, 3, 3, 0}, DissimKind::precomputed);
  CHECK(ok.at(0, 1) == 3.0);
  CHECK(ok.at(1, 0) == 3.0);
}

TEST_CASE("euclidean matrix matches hand distances and is parallel-stable") {
  const Dataset d({0, 0, 3, 4, 6, 8}, 3, 2);
  shc::set_worker_cap(1);
  const DissimilarityMatrix serial = DissimilarityMatrix::euclidean(d);
  shc::set_worker_cap(4);
  const DissimilarityMatrix threaded = DissimilarityMatrix::euclidean(d);
  shc::set_worker_cap(0);
  CHECK(serial.at(0, 1) == doctest::Approx(5.0));
  CHECK(serial.at(0, 2) == doctest::Approx(10.0));
  CHECK(serial.at(1, 2) == doctest::Approx(5.0));
  CHECK(serial.values() == threaded.values());
  CHECK(serial.kind() == DissimKind::euclidean);
}

TEST_CASE("Dendrogram validates structure") {
  // Two valid merges over 3 leaves.
  CHECK_NOTHROW(Dendrogram(3, {{0, 1, 1.0, 2}, {3, 2, 2.0, 3}}));
  // Wrong merge count.
  CHECK_THROWS_AS(Dendrogram(3, {{0, 1, 1.0, 2}}), std::invalid_argument);
  // Node used twice.
  CHECK_THROWS_AS(Dendrogram(3, std::vector<Merge>{{0, 1, 1.0, 2}, {1, 2, 2.0, 3}}),
                  std::invalid_argument);
  // Forward reference.
  CHECK_THROWS_AS(Dendrogram(3, std::vector<Merge>{{0, 4, 1.0, 2}, {3, 2, 2.0, 3}}),
                  std::invalid_argument);
  // Wrong size bookkeeping.
  CHECK_THROWS_AS(Dendrogram(3, std::vector<Merge>{{0, 1, 1.0, 3}, {3, 2, 2.0, 3}}),
                  std::invalid_argument);
  // Negative height.
  CHECK_THROWS_AS(Dendrogram(3, std::vector<Merge>{{0, 1, -1.0, 2}, {3, 2, 2.0, 3}}),
                  std::invalid_argument);
}

TEST_CASE("Dendrogram reports inversions and max height") {
  const Dendrogram monotone(3, {{0, 1, 1.0, 2}, {3, 2, 2.0, 3}});
  CHECK(monotone.inversion_count() == 0);
  CHECK(monotone.max_height() == 2.0);
  const Dendrogram inverted(3, {{0, 1, 2.0, 2}, {3, 2, 1.0, 3}});
  CHECK(inverted.inversion_count() == 1);
  CHECK(inverted.max_height() == 2.0);
}

TEST_CASE("Dendrogram JSON export is parseable and 1-based") {
  const Dendrogram tree(3, {{0, 1, 1.5, 2}, {3, 2, 2.5, 3}});
  const auto parsed = nlohmann::json::parse(tree.to_json());
  CHECK(parsed["leaves"] == 3);
  CHECK(parsed["merges"].size() == 2);
  CHECK(parsed["merges"][0]["left"] == 1);
  CHECK(parsed["merges"][0]["right"] == 2);
  CHECK(parsed["merges"][0]["height"] == 1.5);
  CHECK(parsed["merges"][1]["left"] == 4);
  CHECK(parsed["merges"][1]["size"] == 3);
}

TEST_CASE("membership matrix encodes one clustering one-hot") {
  const std::vector<Clustering> runs{Clustering({1, 1, 2})};
  const MembershipMatrix m = shc::membership_matrix(runs);
  CHECK(m.rows() == 3);
  CHECK(m.total_columns() == 2);
  const int expected[3][2] = {{1, 0}, {1, 0}, {0, 1}};
  for (int i = 0; i < 3; ++i) {
    for (int c = 0; c < 2; ++c) CHECK(m.entry(i, c) == expected[i][c]);
  }
}

TEST_CASE("membership matrix concatenates blocks") {
  const std::vector<Clustering> runs{Clustering({1, 2}), Clustering({2, 1})};
  const MembershipMatrix m = shc::membership_matrix(runs);
  CHECK(m.rows() == 2);
  CHECK(m.block_count() == 2);
  CHECK(m.total_columns() == 4);
  const int expected[2][4] = {{1, 0, 0, 1}, {0, 1, 1, 0}};
  for (int i = 0; i < 2; ++i) {
    for (int c = 0; c < 4; ++c) CHECK(m.entry(i, c) == expected[i][c]);
  }
}

TEST_CASE("membership row sums equal the block count") {
  shc::Rng rng(17);
  std::vector<Clustering> runs;
  for (int b = 0; b < 3; ++b) {
    std::vector<int> assignment(5);
    for (int i = 0; i < 5; ++i) assignment[i] = 1 + static_cast<int>(rng.uniform_index(3));
    runs.emplace_back(std::move(assignment));
  }
  const MembershipMatrix m = shc::membership_matrix(runs);
  for (int i = 0; i < m.rows(); ++i) {
    int sum = 0;
    for (int c = 0; c < m.total_columns(); ++c) sum += m.entry(i, c);
    CHECK(sum == 3);
  }
}

TEST_CASE("membership matrix rejects mismatched n") {
  const std::vector<Clustering> runs{Clustering({1, 2}), Clustering({1, 2, 1})};
  CHECK_THROWS_AS(shc::membership_matrix(runs), std::invalid_argument);
}

TEST_CASE("hamming distance counts differing positions") {
  // Rows (1,0,0,1) vs (0,1,0,1): blocks of 2+2, ids (1,2) and (2,2).
  const MembershipMatrix m(2, {2, 2}, {1, 2, 2, 2});
  const DissimilarityMatrix d = shc::hamming_dissimilarity(m);
  CHECK(d.at(0, 1) == 2.0);
  CHECK(d.at(0, 0) == 0.0);
  CHECK(d.kind() == DissimKind::hamming);

  const MembershipMatrix same(2, {2, 3}, {1, 2, 1, 2});
  CHECK(shc::hamming_dissimilarity(same).at(0, 1) == 0.0);
}

TEST_CASE("hamming distance equals the brute-force position count") {
  shc::Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng.uniform_index(6));
    const int blocks = 1 + static_cast<int>(rng.uniform_index(4));
    std::vector<Clustering> runs;
    for (int b = 0; b < blocks; ++b) {
      const int k = 1 + static_cast<int>(rng.uniform_index(3));
      std::vector<int> assignment(n);
      for (int i = 0; i < n; ++i) assignment[i] = 1 + static_cast<int>(rng.uniform_index(k));
      runs.emplace_back(std::move(assignment));
    }
    const MembershipMatrix m = shc::membership_matrix(runs);
    const DissimilarityMatrix d = shc::hamming_dissimilarity(m);
    const auto reference = oracles::hamming_reference(m);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        CHECK(d.at(i, j) == static_cast<double>(reference[i][j]));
      }
    }
  }
}

TEST_CASE("hamming distance is a metric and counts disagreeing blocks twice") {
  shc::Rng rng(7);
  const int n = 7, blocks = 5;
  std::vector<Clustering> runs;
  for (int b = 0; b < blocks; ++b) {
    std::vector<int> assignment(n);
    for (int i = 0; i < n; ++i) assignment[i] = 1 + static_cast<int>(rng.uniform_index(3));
    runs.emplace_back(std::move(assignment));
  }
  const MembershipMatrix m = shc::membership_matrix(runs);
  const DissimilarityMatrix d = shc::hamming_dissimilarity(m);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CHECK(d.at(i, j) == d.at(j, i));
      int agree = 0;
      for (int b = 0; b < blocks; ++b) agree += m.block_id(i, b) == m.block_id(j, b);
      CHECK(d.at(i, j) == 2.0 * (blocks - agree));
      for (int l = 0; l < n; ++l) {
        CHECK(d.at(i, j) <= d.at(i, l) + d.at(l, j));
      }
    }
  }
}

TEST_CASE("MembershipMatrix validates ids against block sizes") {
  CHECK_THROWS_AS(MembershipMatrix(2, {2}, {1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(MembershipMatrix(2, {2}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(MembershipMatrix(2, {}, {}), std::invalid_argument);
}

}  // TEST_SUITE
