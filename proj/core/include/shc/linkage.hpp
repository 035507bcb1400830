#pragma once

#include <span>
#include <string>
#include <vector>

#include "shc/clustering.hpp"
#include "shc/dendrogram.hpp"
#include "shc/dissimilarity.hpp"

namespace shc {

// How the dissimilarity between two sets of points is read off the
// underlying point-level matrix: either the minimum cross-set distance or a
// low percentile of all cross-set distances. The percentile variant keeps
// merges from chaining through a single close pair while still favouring
// elongated structure.
class SetDissimilarity {
 public:
  static SetDissimilarity minimum() { return SetDissimilarity(true, 0.0); }
  static SetDissimilarity percentile20() { return percentile(0.20); }
  static SetDissimilarity percentile(double p);

  bool is_minimum() const { return minimum_; }
  // Valid only for percentile kind; in (0, 1).
  double percentile_value() const { return p_; }
  std::string name() const;

 private:
  SetDissimilarity(bool minimum, double p) : minimum_(minimum), p_(p) {}
  bool minimum_;
  double p_;
};

// Quantile with linear interpolation between order statistics: for sorted
// x[0..N-1] and h = (N-1)p, returns x[floor(h)] + (h - floor(h)) *
// (x[floor(h)+1] - x[floor(h)]).
double quantile_type7(std::vector<double> values, double p);

// Dissimilarity between point sets a and b (disjoint, nonempty) under
// `kind`, reading point distances from `base`.
double set_dissimilarity(std::span<const int> a, std::span<const int> b,
                         const DissimilarityMatrix& base, SetDissimilarity kind);

// Agglomerates `items` (disjoint nonempty point-id sets over base) until one
// remains, always joining the pair with the smallest current set
// dissimilarity. Ties break toward the lexicographically smallest node-id
// pair, with leaves numbered by item order and merge j creating node
// items.size()+j. After a merge the new set's dissimilarities are recomputed
// from the definition (for the minimum kind this reduces to the usual
// min-of-mins update).
Dendrogram single_linkage(const std::vector<std::vector<int>>& items,
                          const DissimilarityMatrix& base, SetDissimilarity kind);

// Convenience: every point of `base` as a singleton item.
Dendrogram single_linkage(const DissimilarityMatrix& base, SetDissimilarity kind);

struct CutResult {
  Clustering clustering;
  double height;  // height of the merge that formed this partition; 0 when k = n
  double h_k;     // height of the next merge (k -> k-1); +inf when k = 1
};

// Partition into k clusters by undoing the last k-1 merges. Cluster ids are
// assigned by smallest leaf index.
CutResult cut(const Dendrogram& tree, int k);

// Number of clusters when every merge strictly above `threshold` is undone.
int clusters_at_threshold(const Dendrogram& tree, double threshold);

struct BranchLengths {
  std::vector<double> lengths;  // one per branch alive in the k-partition
  double mean = 0.0;
};

// For each of the k branches crossing the level just below H_K: the gap
// between H_K and the height at which that branch was created (0 for
// leaves). Requires 2 <= k <= leaf count.
BranchLengths branch_lengths(const Dendrogram& tree, int k);

struct Lifetime {
  int k;
  double length;
};

// Lifetime of each cluster count K in {2..n}: the height interval in which
// cutting the tree yields exactly K clusters. Their sum telescopes to the
// final merge height.
std::vector<Lifetime> lifetimes(const Dendrogram& tree);

}  // namespace shc
