#pragma once

#include <span>
#include <vector>

#include "shc/clustering.hpp"
#include "shc/dissimilarity.hpp"

namespace shc {

// Column-blocked 0/1 membership matrix: one block per clustering, one
// column per cluster, exactly one 1 per row within each block. Stored
// compactly as the per-block cluster id of each row; entry() reconstructs
// the 0/1 view.
class MembershipMatrix {
 public:
  // ids is row-major n x block_count; ids[i*B + b] in 1..block_sizes[b].
  MembershipMatrix(int n, std::vector<int> block_sizes, std::vector<int> ids);

  int rows() const { return n_; }
  int block_count() const { return static_cast<int>(block_sizes_.size()); }
  const std::vector<int>& block_sizes() const { return block_sizes_; }
  int total_columns() const { return total_columns_; }

  // 0/1 entry at (row, col), col in 0..total_columns()-1 across all blocks.
  int entry(int row, int col) const;

  // Cluster id of `row` in block b (1-based id).
  int block_id(int row, int b) const {
    return ids_[static_cast<std::size_t>(row) * block_sizes_.size() + b];
  }

 private:
  int n_;
  std::vector<int> block_sizes_;
  std::vector<int> block_offsets_;  // prefix sums, block_count()+1 entries
  std::vector<int> ids_;
  int total_columns_;
};

// Concatenates the one-hot encodings of the given clusterings (all over the
// same items) into one membership matrix, preserving order.
MembershipMatrix membership_matrix(std::span<const Clustering> clusterings);

// Hamming dissimilarity between rows: the number of positions where the 0/1
// rows differ. Rows are one-hot per block, so each disagreeing block
// contributes exactly 2.
DissimilarityMatrix hamming_dissimilarity(const MembershipMatrix& m);

}  // namespace shc
