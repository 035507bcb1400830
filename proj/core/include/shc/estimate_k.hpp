#pragma once

#include <array>
#include <vector>

#include "shc/dataset.hpp"
#include "shc/pipeline.hpp"

namespace shc {

struct EkConfig {
  EnsembleConfig ensemble;
  // Clusters holding at most this share of the points may be removed before
  // recounting. 0 disables removal entirely.
  double alpha = 0.05;
};

struct EkResult {
  double estimate = 0.0;  // mean of the two sub-counts, possibly half-integer
  int rounded = 0;        // estimate rounded half-up
  std::array<int, 2> counts{};         // cluster counts after refinement
  std::array<int, 2> lifetime_ks{};    // the two chosen cluster counts, largest lifetime first
  std::array<double, 2> lifetime_cuts{};  // dissimilarity thresholds used
  std::array<std::vector<int>, 2> removed_sizes{};  // sizes of removed clusters
};

// Estimates the number of clusters: builds the stabilized distance matrix,
// takes the two largest dendrogram lifetimes (ties toward smaller k), and
// for each one cuts there, drops small clusters formed within one merge of
// the cut, rebuilds the tree on the survivors and recounts at the same
// threshold. The estimate is the mean of the two counts.
EkResult estimate_k(const Dataset& data, const EkConfig& cfg);

void validate(const EkConfig& cfg, int n);

}  // namespace shc
