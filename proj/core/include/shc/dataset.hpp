#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace shc {

// Immutable numeric dataset: n points in R^m, row-major storage, with an
// optional ground-truth labelling. Labels are normalized to 1..K_T on
// construction (original values are remapped in order of first appearance
// unless they already form that range).
class Dataset {
 public:
  Dataset(std::vector<double> values, int n, int m,
          std::optional<std::vector<int>> labels = std::nullopt,
          std::string name = "");

  int size() const { return n_; }
  int dim() const { return m_; }
  const std::string& name() const { return name_; }

  std::span<const double> point(int i) const {
    return {values_.data() + static_cast<std::size_t>(i) * m_, static_cast<std::size_t>(m_)};
  }
  double coord(int i, int j) const {
    return values_[static_cast<std::size_t>(i) * m_ + j];
  }
  const std::vector<double>& values() const { return values_; }

  bool has_labels() const { return labels_.has_value(); }
  // Valid only when has_labels(); entries in 1..label_count().
  const std::vector<int>& labels() const { return *labels_; }
  int label_count() const { return label_count_; }

 private:
  std::vector<double> values_;
  int n_;
  int m_;
  std::optional<std::vector<int>> labels_;
  int label_count_ = 0;
  std::string name_;
};

// Squared Euclidean distance between points i and j of data.
double squared_distance(const Dataset& data, int i, int j);

}  // namespace shc
