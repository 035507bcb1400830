#pragma once

#include <vector>

namespace shc {

class Dataset;

enum class DissimKind { euclidean, hamming, precomputed };

// Dense symmetric n x n dissimilarity matrix with zero diagonal.
// Stored in full row-major form: at(i, j) is a plain lookup either way round.
class DissimilarityMatrix {
 public:
  DissimilarityMatrix(int n, std::vector<double> full, DissimKind kind);

  static DissimilarityMatrix euclidean(const Dataset& data);

  int size() const { return n_; }
  DissimKind kind() const { return kind_; }

  double at(int i, int j) const {
    return values_[static_cast<std::size_t>(i) * n_ + j];
  }
  const std::vector<double>& values() const { return values_; }

 private:
  int n_;
  std::vector<double> values_;
  DissimKind kind_;
};

}  // namespace shc
