#pragma once

#include <string>
#include <vector>

namespace shc {

// One agglomeration step. Node ids: leaves are 0..n-1, the i-th merge
// (0-based) creates internal node n+i. `size` is the number of leaves in
// the merged subtree.
struct Merge {
  int left;
  int right;
  double height;
  int size;
};

// Agglomerative merge tree over n leaves: exactly n-1 merges, each joining
// two previously unmerged nodes. Heights are not required to be
// monotone; percentile-based set dissimilarities can produce inversions.
class Dendrogram {
 public:
  Dendrogram(int leaf_count, std::vector<Merge> merges);

  int leaf_count() const { return leaf_count_; }
  const std::vector<Merge>& merges() const { return merges_; }
  double max_height() const;

  // Number of steps where the merge height drops below the previous one.
  // Zero for minimum-linkage trees.
  int inversion_count() const;

  // {"leaves": n, "merges": [{"left","right","height","size"}, ...]}
  // with node ids shifted to 1-based.
  std::string to_json() const;

 private:
  int leaf_count_;
  std::vector<Merge> merges_;
};

}  // namespace shc
