#include "shc/clustering.hpp"

#include <stdexcept>
#include <unordered_map>

namespace shc {

Clustering::Clustering(std::vector<int> assignment) : assignment_(std::move(assignment)) {
  if (assignment_.empty()) throw std::invalid_argument("Clustering: empty assignment");

  int max_seen = 0;
  bool dense = true;
  std::unordered_map<int, int> remap;
  for (int id : assignment_) {
    if (id < 1) dense = false;
    if (id > max_seen) max_seen = id;
    remap.emplace(id, static_cast<int>(remap.size()) + 1);
  }
  k_ = static_cast<int>(remap.size());
  if (dense && max_seen == k_) return;
  for (int& id : assignment_) id = remap.at(id);
}

std::vector<std::vector<int>> Clustering::members() const {
  std::vector<std::vector<int>> out(k_);
  for (int i = 0; i < size(); ++i) out[assignment_[i] - 1].push_back(i);
  return out;
}

std::vector<int> Clustering::sizes() const {
  std::vector<int> out(k_, 0);
  for (int id : assignment_) ++out[id - 1];
  return out;
}

bool same_partition(const Clustering& a, const Clustering& b) {
  if (a.size() != b.size() || a.cluster_count() != b.cluster_count()) return false;
  std::vector<int> a_to_b(a.cluster_count() + 1, 0);
  std::vector<int> b_to_a(b.cluster_count() + 1, 0);
  for (int i = 0; i < a.size(); ++i) {
    const int ca = a.cluster_of(i);
    const int cb = b.cluster_of(i);
    if (a_to_b[ca] == 0 && b_to_a[cb] == 0) {
      a_to_b[ca] = cb;
      b_to_a[cb] = ca;
    } else if (a_to_b[ca] != cb || b_to_a[cb] != ca) {
      return false;
    }
  }
  return true;
}

}  // namespace shc
