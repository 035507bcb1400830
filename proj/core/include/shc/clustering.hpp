#pragma once

#include <vector>

namespace shc {

// A hard partition of n items into k clusters, ids 1..k with every id used.
// The constructor densifies arbitrary assignment values: if they already
// form 1..k they are kept, otherwise ids are assigned by first appearance.
class Clustering {
 public:
  explicit Clustering(std::vector<int> assignment);

  int size() const { return static_cast<int>(assignment_.size()); }
  int cluster_count() const { return k_; }
  int cluster_of(int item) const { return assignment_[item]; }
  const std::vector<int>& assignment() const { return assignment_; }

  // Item indices per cluster; members()[c] lists cluster c+1 in item order.
  std::vector<std::vector<int>> members() const;
  std::vector<int> sizes() const;

  bool operator==(const Clustering& other) const {
    return assignment_ == other.assignment_;
  }

 private:
  std::vector<int> assignment_;
  int k_ = 0;
};

// True when the two clusterings induce the same partition, ignoring how
// clusters are numbered.
bool same_partition(const Clustering& a, const Clustering& b);

}  // namespace shc
