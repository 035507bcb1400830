#include "shc/membership.hpp"

#include <algorithm>
#include <stdexcept>

#include "shc/parallel.hpp"

namespace shc {

MembershipMatrix::MembershipMatrix(int n, std::vector<int> block_sizes, std::vector<int> ids)
    : n_(n), block_sizes_(std::move(block_sizes)), ids_(std::move(ids)) {
  if (n_ < 1) throw std::invalid_argument("MembershipMatrix: need n >= 1");
  if (block_sizes_.empty()) throw std::invalid_argument("MembershipMatrix: need >= 1 block");
  block_offsets_.assign(block_sizes_.size() + 1, 0);
  for (std::size_t b = 0; b < block_sizes_.size(); ++b) {
    if (block_sizes_[b] < 1) throw std::invalid_argument("MembershipMatrix: empty block");
    block_offsets_[b + 1] = block_offsets_[b] + block_sizes_[b];
  }
  total_columns_ = block_offsets_.back();
  if (ids_.size() != static_cast<std::size_t>(n_) * block_sizes_.size()) {
    throw std::invalid_argument("MembershipMatrix: id buffer size does not match n*blocks");
  }
  for (int i = 0; i < n_; ++i) {
    for (std::size_t b = 0; b < block_sizes_.size(); ++b) {
      const int id = ids_[i * block_sizes_.size() + b];
      if (id < 1 || id > block_sizes_[b]) {
        throw std::invalid_argument("MembershipMatrix: id out of block range");
      }
    }
  }
}

int MembershipMatrix::entry(int row, int col) const {
  const auto it = std::upper_bound(block_offsets_.begin(), block_offsets_.end(), col);
  const int b = static_cast<int>(it - block_offsets_.begin()) - 1;
  const int within = col - block_offsets_[b];
  return block_id(row, b) == within + 1 ? 1 : 0;
}

MembershipMatrix membership_matrix(std::span<const Clustering> clusterings) {
  if (clusterings.empty()) {
    throw std::invalid_argument("membership_matrix: need at least one clustering");
  }
  const int n = clusterings.front().size();
  const int blocks = static_cast<int>(clusterings.size());
  std::vector<int> block_sizes(blocks);
  std::vector<int> ids(static_cast<std::size_t>(n) * blocks);
  for (int b = 0; b < blocks; ++b) {
    const Clustering& c = clusterings[b];
    if (c.size() != n) {
      throw std::invalid_argument("membership_matrix: clusterings disagree on n");
    }
    block_sizes[b] = c.cluster_count();
    for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i) * blocks + b] = c.cluster_of(i);
  }
  return MembershipMatrix(n, std::move(block_sizes), std::move(ids));
}

DissimilarityMatrix hamming_dissimilarity(const MembershipMatrix& m) {
  const int n = m.rows();
  const int blocks = m.block_count();
  std::vector<double> full(static_cast<std::size_t>(n) * n, 0.0);
  parallel_for(0, n, [&](int i) {
    for (int j = i + 1; j < n; ++j) {
      int disagreements = 0;
      for (int b = 0; b < blocks; ++b) {
        disagreements += m.block_id(i, b) != m.block_id(j, b);
      }
      const double d = 2.0 * disagreements;
      full[static_cast<std::size_t>(i) * n + j] = d;
      full[static_cast<std::size_t>(j) * n + i] = d;
    }
  });
  return DissimilarityMatrix(n, std::move(full), DissimKind::hamming);
}

}  // namespace shc
