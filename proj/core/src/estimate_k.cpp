#include "shc/estimate_k.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace shc {

namespace {

struct SubCount {
  int count = 0;
  double threshold = 0.0;
  std::vector<int> removed_sizes;
};

// Cut at the lifetime of `k_i`, remove clusters that are small and freshly
// formed (their merge is one of the last two beneath the cut) or lone
// points, then recount the survivors' tree at the same threshold.
SubCount refine_and_count(const Dendrogram& tree, const DissimilarityMatrix& distances,
                          int k_i, double alpha) {
  const int n = tree.leaf_count();
  const auto& merges = tree.merges();

  const double upper = merges[n - k_i].height;
  const double lower = (n - k_i - 1 >= 0) ? merges[n - k_i - 1].height : 0.0;
  SubCount out;
  out.threshold = (lower + upper) / 2.0;

  const Clustering at_cut = cut(tree, k_i).clustering;
  const std::vector<std::vector<int>> members = at_cut.members();

  // Formation merge of each cluster alive at the cut; -1 marks a leaf.
  std::vector<int> formed_by(k_i, -1);
  {
    std::vector<int> node_of(n + merges.size());
    for (int i = 0; i < n; ++i) node_of[i] = i;
    std::vector<bool> alive(n + merges.size(), false);
    std::vector<int> formation(n + merges.size(), -1);
    for (int i = 0; i < n; ++i) alive[i] = true;
    for (int i = 0; i < n - k_i; ++i) {
      alive[merges[i].left] = false;
      alive[merges[i].right] = false;
      alive[n + i] = true;
      formation[n + i] = i;
    }
    // Match each alive node to its cluster through one of its leaves.
    std::vector<int> leaf_of(n + merges.size());
    for (int i = 0; i < n; ++i) leaf_of[i] = i;
    for (std::size_t i = 0; i < merges.size(); ++i) {
      leaf_of[n + i] = leaf_of[merges[i].left];
    }
    for (std::size_t node = 0; node < alive.size(); ++node) {
      if (!alive[node]) continue;
      const int cluster = at_cut.cluster_of(leaf_of[node]) - 1;
      formed_by[cluster] = formation[node];
    }
  }

  std::vector<int> survivors;
  std::vector<int> removed;
  for (int c = 0; c < k_i; ++c) {
    const int size = static_cast<int>(members[c].size());
    const bool is_small = static_cast<double>(size) <= alpha * n;
    const bool near_cut = formed_by[c] < 0 || formed_by[c] >= n - k_i - 2;
    if (is_small && near_cut) {
      removed.push_back(size);
    } else {
      survivors.insert(survivors.end(), members[c].begin(), members[c].end());
    }
  }

  if (survivors.size() < 2 || removed.empty()) {
    // Nothing (or everything) would be removed: count on the original tree.
    out.count = clusters_at_threshold(tree, out.threshold);
    out.removed_sizes.clear();
    return out;
  }

  std::sort(survivors.begin(), survivors.end());
  std::vector<std::vector<int>> items(survivors.size());
  for (std::size_t i = 0; i < survivors.size(); ++i) items[i] = {survivors[i]};
  const Dendrogram sub_tree = single_linkage(items, distances, SetDissimilarity::minimum());
  out.count = clusters_at_threshold(sub_tree, out.threshold);
  out.removed_sizes = std::move(removed);
  return out;
}

}  // namespace

void validate(const EkConfig& cfg, int n) {
  validate(cfg.ensemble, n);
  if (!(cfg.alpha >= 0.0 && cfg.alpha < 1.0)) {
    throw std::invalid_argument("estimate_k: alpha must be in [0, 1)");
  }
}

EkResult estimate_k(const Dataset& data, const EkConfig& cfg) {
  validate(cfg, data.size());
  const EnsembleResult ens = ensemble(data, cfg.ensemble);
  const Dendrogram tree = single_linkage(ens.distances, SetDissimilarity::minimum());

  std::vector<Lifetime> spans = lifetimes(tree);
  std::stable_sort(spans.begin(), spans.end(), [](const Lifetime& a, const Lifetime& b) {
    if (a.length != b.length) return a.length > b.length;
    return a.k < b.k;
  });

  const Lifetime first = spans[0];
  const Lifetime second = spans.size() > 1 ? spans[1] : spans[0];

  EkResult out;
  out.lifetime_ks = {first.k, second.k};
  const std::array<Lifetime, 2> picks{first, second};
  for (int s = 0; s < 2; ++s) {
    SubCount sub = refine_and_count(tree, ens.distances, picks[s].k, cfg.alpha);
    out.counts[s] = sub.count;
    out.lifetime_cuts[s] = sub.threshold;
    out.removed_sizes[s] = std::move(sub.removed_sizes);
  }
  out.estimate = (out.counts[0] + out.counts[1]) / 2.0;
  out.rounded = static_cast<int>(std::floor(out.estimate + 0.5));
  return out;
}

}  // namespace shc
