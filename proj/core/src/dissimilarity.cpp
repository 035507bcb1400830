#include "shc/dissimilarity.hpp"

#include <cmath>
#include <stdexcept>

#include "shc/dataset.hpp"
#include "shc/parallel.hpp"

namespace shc {

DissimilarityMatrix::DissimilarityMatrix(int n, std::vector<double> full, DissimKind kind)
    : n_(n), values_(std::move(full)), kind_(kind) {
  if (n_ < 1) throw std::invalid_argument("DissimilarityMatrix: need n >= 1");
  if (values_.size() != static_cast<std::size_t>(n_) * n_) {
    throw std::invalid_argument("DissimilarityMatrix: buffer size does not match n*n");
  }
  for (int i = 0; i < n_; ++i) {
    if (at(i, i) != 0.0) {
      throw std::invalid_argument("DissimilarityMatrix: nonzero diagonal");
    }
    for (int j = i + 1; j < n_; ++j) {
      const double d = at(i, j);
      if (!std::isfinite(d) || d < 0.0) {
        throw std::invalid_argument("DissimilarityMatrix: entries must be finite and >= 0");
      }
      if (d != at(j, i)) {
        throw std::invalid_argument("DissimilarityMatrix: matrix must be symmetric");
      }
    }
  }
}

DissimilarityMatrix DissimilarityMatrix::euclidean(const Dataset& data) {
  const int n = data.size();
  std::vector<double> full(static_cast<std::size_t>(n) * n, 0.0);
  parallel_for(0, n, [&](int i) {
    for (int j = i + 1; j < n; ++j) {
      const double d = std::sqrt(squared_distance(data, i, j));
      full[static_cast<std::size_t>(i) * n + j] = d;
      full[static_cast<std::size_t>(j) * n + i] = d;
    }
  });
  return DissimilarityMatrix(n, std::move(full), DissimKind::euclidean);
}

}  // namespace shc
