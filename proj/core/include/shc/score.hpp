#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "shc/clustering.hpp"
#include "shc/dataset.hpp"

namespace shc {

// Fraction of points placed correctly under the best one-to-one matching of
// predicted clusters to true labels (optimal assignment on the contingency
// table, padded square when the sides disagree). 1.0 means the partitions
// agree exactly up to renaming.
double accuracy_index(const Clustering& predicted, std::span<const int> truth);

struct ScoreReport {
  double mai = 0.0;  // mean accuracy index across runs
  double sai = 0.0;  // sample standard deviation (0 for a single run)
  int runs = 0;
  std::vector<double> per_run;
};

using ClusterMethod = std::function<Clustering(const Dataset&, std::uint64_t)>;

// Runs `method` once per seed against the dataset's ground truth.
ScoreReport repeat_and_score(const ClusterMethod& method, const Dataset& data,
                             std::span<const std::uint64_t> seeds);
// Convenience: seeds derived from base_seed by run index.
ScoreReport repeat_and_score(const ClusterMethod& method, const Dataset& data,
                             int runs, std::uint64_t base_seed);

// Evidence-accumulation baseline: b plain Lloyd runs with per-run k drawn
// uniformly from {2..k_max}, co-association matrix, minimum-linkage merge
// tree on 1 - co-association, cut at k.
Clustering eac_baseline(const Dataset& data, int b, int k_max, int k, std::uint64_t seed);

// Fixed-width table with one column per method and MAI/SAI rows.
std::string render_score_table(std::span<const std::string> names,
                               std::span<const ScoreReport> reports);
// The same data as a JSON document, with per-run values included.
std::string render_score_json(std::span<const std::string> names,
                              std::span<const ScoreReport> reports);

}  // namespace shc
