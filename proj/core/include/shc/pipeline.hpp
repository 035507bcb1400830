#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "shc/clustering.hpp"
#include "shc/dataset.hpp"
#include "shc/dissimilarity.hpp"
#include "shc/linkage.hpp"
#include "shc/membership.hpp"

namespace shc {

// How the basal cluster count of each ensemble iteration is chosen.
struct BasalRule {
  enum class Kind { fixed, range_n6_n4 };

  static BasalRule fixed(int value) { return {Kind::fixed, value}; }
  // Uniform on {floor(n/6), ..., floor(n/4)}; needs floor(n/6) >= 2.
  static BasalRule range_n6_n4() { return {Kind::range_n6_n4, 0}; }

  Kind kind = Kind::range_n6_n4;
  int value = 0;
};

struct EnsembleConfig {
  int iterations = 200;                                    // B
  int k_max = 25;                                          // upper end of the per-iteration target draw
  SetDissimilarity dissim = SetDissimilarity::percentile20();
  BasalRule basal = BasalRule::range_n6_n4();
  std::uint64_t seed = 0;
};

struct ShcConfig {
  EnsembleConfig ensemble;
  int k = 2;            // requested number of clusters
  double alpha = 0.05;  // clusters no larger than alpha*n count as small
};

// One ensemble pass: over-cluster into kl basal clusters with Lloyd's
// algorithm, then agglomerate them down to kb clusters under `dissim`.
// Requires 1 <= kb <= kl <= n. `euclid` must be the Euclidean matrix of
// `data` (pass it in so callers can reuse one across iterations).
Clustering hybrid_iteration(const Dataset& data, const DissimilarityMatrix& euclid,
                            int kb, int kl, SetDissimilarity dissim, std::uint64_t seed);
Clustering hybrid_iteration(const Dataset& data, int kb, int kl,
                            SetDissimilarity dissim, std::uint64_t seed);
// Deterministic variant with caller-chosen basal seeds (kl = number of
// initial points). Useful where the random initialization must be pinned.
Clustering hybrid_iteration(const Dataset& data, const DissimilarityMatrix& euclid,
                            int kb, SetDissimilarity dissim,
                            std::span<const int> initial_points);

struct EnsembleResult {
  MembershipMatrix membership;
  DissimilarityMatrix distances;  // Hamming distances between membership rows
  std::vector<int> basal_counts;   // kl actually used per iteration
  std::vector<int> target_counts;  // kb actually used per iteration
};

// Runs cfg.iterations hybrid iterations with kl drawn by cfg.basal and kb
// uniform on {2..k_max}, clamped to kl when the draw exceeds it. Iteration
// seeds derive from cfg.seed, so results do not depend on execution order.
EnsembleResult ensemble(const Dataset& data, const EnsembleConfig& cfg);

// Throws std::invalid_argument when the configuration cannot run on n points.
void validate(const EnsembleConfig& cfg, int n);
void validate(const ShcConfig& cfg, int n);

struct GrowPruneResult {
  Clustering clustering;
  int k_star = 0;       // clusters after growing
  int large = 0;        // clusters kept as cores
  int attached = 0;     // small clusters folded into a core
  double alpha_used = 0.0;
};

// Final stabilization stage. Grows the k-cluster cut of the merge tree of
// `distances` to k_star >= k clusters by also undoing every merge higher
// than H_k minus the mean branch length, then prunes: clusters of size
// <= alpha*n are set aside (alpha halves until k large clusters remain),
// the large ones are re-agglomerated down to k under the minimum set
// dissimilarity, and each small cluster joins the final cluster containing
// its nearest point.
GrowPruneResult grow_and_prune(const DissimilarityMatrix& distances, int k, double alpha);

struct ShcResult {
  Clustering clustering;
  GrowPruneResult stage;           // clustering repeated here is the same object
  std::vector<int> basal_counts;
  std::vector<int> target_counts;
};

// The complete pipeline: ensemble, Hamming distances, grow-and-prune.
ShcResult shc_cluster(const Dataset& data, const ShcConfig& cfg);

}  // namespace shc
