#include "shc/dataset.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace shc {

namespace {

// Remaps arbitrary label values to 1..K in order of first appearance.
// Labels that already form 1..K are kept as-is.
int normalize_labels(std::vector<int>& labels) {
  int max_seen = 0;
  bool dense = true;
  std::unordered_map<int, int> remap;
  for (int value : labels) {
    if (value < 1) dense = false;
    if (value > max_seen) max_seen = value;
    remap.emplace(value, static_cast<int>(remap.size()) + 1);
  }
  const int distinct = static_cast<int>(remap.size());
  if (dense && max_seen == distinct) return distinct;
  for (int& value : labels) value = remap.at(value);
  return distinct;
}

}  // namespace

Dataset::Dataset(std::vector<double> values, int n, int m,
                 std::optional<std::vector<int>> labels, std::string name)
    : values_(std::move(values)), n_(n), m_(m), labels_(std::move(labels)),
      name_(std::move(name)) {
  if (n_ < 1 || m_ < 1) {
    throw std::invalid_argument("Dataset: need at least one point and one dimension");
  }
  if (values_.size() != static_cast<std::size_t>(n_) * m_) {
    throw std::invalid_argument("Dataset: value buffer size does not match n*m");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw std::invalid_argument("Dataset: non-finite coordinate");
  }
  if (labels_) {
    if (labels_->size() != static_cast<std::size_t>(n_)) {
      throw std::invalid_argument("Dataset: label vector length does not match n");
    }
    label_count_ = normalize_labels(*labels_);
  }
}

double squared_distance(const Dataset& data, int i, int j) {
  const auto a = data.point(i);
  const auto b = data.point(j);
  double acc = 0.0;
  for (std::size_t d = 0; d < a.size(); ++d) {
    const double diff = a[d] - b[d];
    acc += diff * diff;
  }
  return acc;
}

}  // namespace shc
