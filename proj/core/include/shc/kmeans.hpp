#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "shc/clustering.hpp"
#include "shc/dataset.hpp"

namespace shc {

struct KMeansResult {
  Clustering clustering;
  std::vector<double> centroids;  // k x m row-major, aligned with cluster ids
  double wss = 0.0;
  int iterations = 0;
  // Within-cluster sum of squares after each assignment/update cycle.
  // Non-increasing by construction of the algorithm.
  std::vector<double> wss_trace;
};

// Total within-cluster sum of squared Euclidean distances to cluster means.
double wss(const Dataset& data, const Clustering& clustering);

// Lloyd's algorithm. Centroids start at k distinct points drawn uniformly
// without replacement using `seed`. Points tie-break toward the lowest
// centroid index; a cluster left empty after assignment is re-seeded with
// the point currently farthest from its own centroid (never emptying a
// cluster of one). Stops when the assignment is stable or after 100 cycles.
KMeansResult kmeans(const Dataset& data, int k, std::uint64_t seed);

// Same, but with caller-chosen initial centroids (distinct point indices).
KMeansResult kmeans(const Dataset& data, std::span<const int> initial_points);

}  // namespace shc
