#include "shc/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "shc/kmeans.hpp"
#include "shc/parallel.hpp"
#include "shc/rng.hpp"

namespace shc {

namespace {

// Expands an item-level clustering back to points: point i belongs to the
// final cluster of its basal cluster.
std::vector<int> expand(const Clustering& basal, const Clustering& item_level) {
  std::vector<int> assignment(basal.size());
  for (int i = 0; i < basal.size(); ++i) {
    assignment[i] = item_level.cluster_of(basal.cluster_of(i) - 1);
  }
  return assignment;
}

}  // namespace

Clustering hybrid_iteration(const Dataset& data, const DissimilarityMatrix& euclid,
                            int kb, int kl, SetDissimilarity dissim, std::uint64_t seed) {
  if (euclid.size() != data.size()) {
    throw std::invalid_argument("hybrid_iteration: matrix and dataset disagree on n");
  }
  if (kb < 1 || kb > kl || kl > data.size()) {
    throw std::invalid_argument("hybrid_iteration: need 1 <= kb <= kl <= n");
  }
  const KMeansResult base = kmeans(data, kl, seed);
  if (kb == kl) return base.clustering;
  const Dendrogram tree = single_linkage(base.clustering.members(), euclid, dissim);
  const CutResult ck = cut(tree, kb);
  return Clustering(expand(base.clustering, ck.clustering));
}

Clustering hybrid_iteration(const Dataset& data, int kb, int kl,
                            SetDissimilarity dissim, std::uint64_t seed) {
  return hybrid_iteration(data, DissimilarityMatrix::euclidean(data), kb, kl, dissim, seed);
}

Clustering hybrid_iteration(const Dataset& data, const DissimilarityMatrix& euclid,
                            int kb, SetDissimilarity dissim,
                            std::span<const int> initial_points) {
  const int kl = static_cast<int>(initial_points.size());
  if (euclid.size() != data.size()) {
    throw std::invalid_argument("hybrid_iteration: matrix and dataset disagree on n");
  }
  if (kb < 1 || kb > kl) throw std::invalid_argument("hybrid_iteration: need 1 <= kb <= kl");
  const KMeansResult base = kmeans(data, initial_points);
  if (kb == kl) return base.clustering;
  const Dendrogram tree = single_linkage(base.clustering.members(), euclid, dissim);
  const CutResult ck = cut(tree, kb);
  return Clustering(expand(base.clustering, ck.clustering));
}

void validate(const EnsembleConfig& cfg, int n) {
  if (n < 2) throw std::invalid_argument("ensemble: need at least two points");
  if (cfg.iterations < 1) throw std::invalid_argument("ensemble: iterations must be >= 1");
  if (cfg.k_max < 2) throw std::invalid_argument("ensemble: k_max must be >= 2");
  if (cfg.basal.kind == BasalRule::Kind::fixed) {
    if (cfg.basal.value < 2 || cfg.basal.value > n) {
      throw std::invalid_argument("ensemble: fixed basal count must be in [2, n]");
    }
  } else {
    if (n / 6 < 2) {
      throw std::invalid_argument(
          "ensemble: the n/6..n/4 basal rule needs n >= 12; use a fixed basal count");
    }
  }
}

void validate(const ShcConfig& cfg, int n) {
  validate(cfg.ensemble, n);
  if (cfg.k < 2 || cfg.k > cfg.ensemble.k_max) {
    throw std::invalid_argument("shc: need 2 <= k <= k_max");
  }
  if (cfg.k >= n) throw std::invalid_argument("shc: k must be smaller than n");
  if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0)) {
    throw std::invalid_argument("shc: alpha must be in (0, 1)");
  }
}

EnsembleResult ensemble(const Dataset& data, const EnsembleConfig& cfg) {
  validate(cfg, data.size());
  const int n = data.size();
  const int b = cfg.iterations;
  const DissimilarityMatrix euclid = DissimilarityMatrix::euclidean(data);

  std::vector<std::vector<int>> assignments(b);
  std::vector<int> basal_counts(b, 0);
  std::vector<int> target_counts(b, 0);

  parallel_for(0, b, [&](int t) {
    const std::uint64_t iteration_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(t));
    Rng draws(iteration_seed);
    int kl;
    if (cfg.basal.kind == BasalRule::Kind::fixed) {
      kl = cfg.basal.value;
    } else {
      kl = static_cast<int>(draws.uniform_int(n / 6, n / 4));
    }
    int kb = static_cast<int>(draws.uniform_int(2, cfg.k_max));
    if (kb > kl) kb = kl;

    const Clustering labels = hybrid_iteration(data, euclid, kb, kl, cfg.dissim,
                                               derive_seed(iteration_seed, 1));
    assignments[t] = labels.assignment();
    basal_counts[t] = kl;
    target_counts[t] = kb;
  });

  std::vector<Clustering> runs;
  runs.reserve(b);
  for (auto& a : assignments) runs.emplace_back(std::move(a));
  MembershipMatrix membership = membership_matrix(runs);
  DissimilarityMatrix distances = hamming_dissimilarity(membership);
  return EnsembleResult{std::move(membership), std::move(distances),
                        std::move(basal_counts), std::move(target_counts)};
}

GrowPruneResult grow_and_prune(const DissimilarityMatrix& distances, int k, double alpha) {
  const int n = distances.size();
  if (k < 2 || k >= n) throw std::invalid_argument("grow_and_prune: need 2 <= k < n");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("grow_and_prune: alpha must be in (0, 1)");
  }

  const Dendrogram tree = single_linkage(distances, SetDissimilarity::minimum());
  const auto& merges = tree.merges();

  // Cut below H_k by the mean branch length of the k-partition: every merge
  // strictly above that level is undone. The k-partition merges all sit at
  // or above H_k, so k_star >= k.
  const double h_k = merges[n - k].height;
  const double threshold = h_k - branch_lengths(tree, k).mean;
  int k_star = k;
  for (int i = 0; i < n - k; ++i) {
    if (merges[i].height > threshold) ++k_star;
  }

  const Clustering grown = cut(tree, k_star).clustering;
  const std::vector<int> sizes = grown.sizes();

  // A cluster is small when its share of the points is at most alpha.
  // Halve alpha until at least k clusters are large.
  double alpha_used = alpha;
  std::vector<char> small(k_star, 0);
  int large = 0;
  for (;;) {
    large = 0;
    for (int c = 0; c < k_star; ++c) {
      small[c] = sizes[c] <= alpha_used * n ? 1 : 0;
      if (!small[c]) ++large;
    }
    if (large >= k) break;
    alpha_used /= 2.0;
  }

  const std::vector<std::vector<int>> members = grown.members();
  std::vector<std::vector<int>> cores;
  cores.reserve(large);
  std::vector<int> core_cluster(k_star, 0);  // grown cluster -> final id, 0 = pending
  std::vector<int> core_index(k_star, -1);
  for (int c = 0; c < k_star; ++c) {
    if (!small[c]) {
      core_index[c] = static_cast<int>(cores.size());
      cores.push_back(members[c]);
    }
  }

  // Re-agglomerate the large clusters down to k under the minimum set
  // dissimilarity on the same distance matrix.
  std::vector<int> core_final(cores.size(), 1);
  if (large > k) {
    const Dendrogram core_tree = single_linkage(cores, distances, SetDissimilarity::minimum());
    const Clustering core_cut = cut(core_tree, k).clustering;
    for (std::size_t c = 0; c < cores.size(); ++c) core_final[c] = core_cut.cluster_of(c);
  } else {
    for (std::size_t c = 0; c < cores.size(); ++c) core_final[c] = static_cast<int>(c) + 1;
  }
  for (int c = 0; c < k_star; ++c) {
    if (core_index[c] >= 0) core_cluster[c] = core_final[core_index[c]];
  }

  // Each small cluster joins the final cluster of its nearest core point.
  std::vector<int> assignment(n, 0);
  for (int i = 0; i < n; ++i) {
    const int c = grown.cluster_of(i) - 1;
    if (!small[c]) assignment[i] = core_cluster[c];
  }
  int attached = 0;
  for (int c = 0; c < k_star; ++c) {
    if (!small[c]) continue;
    ++attached;
    int best_final = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int p : members[c]) {
      for (int q = 0; q < n; ++q) {
        if (small[grown.cluster_of(q) - 1]) continue;
        const double d = distances.at(p, q);
        if (d < best_d) {
          best_d = d;
          best_final = assignment[q];
        }
      }
    }
    for (int p : members[c]) assignment[p] = best_final;
  }

  return GrowPruneResult{Clustering(std::move(assignment)), k_star, large, attached,
                         alpha_used};
}

ShcResult shc_cluster(const Dataset& data, const ShcConfig& cfg) {
  validate(cfg, data.size());
  EnsembleResult ens = ensemble(data, cfg.ensemble);
  GrowPruneResult stage = grow_and_prune(ens.distances, cfg.k, cfg.alpha);
  Clustering clustering = stage.clustering;
  return ShcResult{std::move(clustering), std::move(stage),
                   std::move(ens.basal_counts), std::move(ens.target_counts)};
}

}  // namespace shc
