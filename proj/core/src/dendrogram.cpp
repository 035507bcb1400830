#include "shc/dendrogram.hpp"

#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace shc {

Dendrogram::Dendrogram(int leaf_count, std::vector<Merge> merges)
    : leaf_count_(leaf_count), merges_(std::move(merges)) {
  if (leaf_count_ < 1) throw std::invalid_argument("Dendrogram: need at least one leaf");
  if (merges_.size() != static_cast<std::size_t>(leaf_count_) - 1) {
    throw std::invalid_argument("Dendrogram: a tree over n leaves has n-1 merges");
  }
  const int total = leaf_count_ + static_cast<int>(merges_.size());
  std::vector<bool> consumed(total, false);
  std::vector<int> sizes(total, 1);
  for (std::size_t i = 0; i < merges_.size(); ++i) {
    const Merge& m = merges_[i];
    const int created = leaf_count_ + static_cast<int>(i);
    if (m.left < 0 || m.right < 0 || m.left >= created || m.right >= created ||
        m.left == m.right) {
      throw std::invalid_argument("Dendrogram: merge references an invalid node");
    }
    if (consumed[m.left] || consumed[m.right]) {
      throw std::invalid_argument("Dendrogram: node merged twice");
    }
    if (!std::isfinite(m.height) || m.height < 0.0) {
      throw std::invalid_argument("Dendrogram: merge height must be finite and >= 0");
    }
    consumed[m.left] = true;
    consumed[m.right] = true;
    sizes[created] = sizes[m.left] + sizes[m.right];
    if (m.size != sizes[created]) {
      throw std::invalid_argument("Dendrogram: merge size does not match subtree");
    }
  }
}

double Dendrogram::max_height() const {
  double h = 0.0;
  for (const Merge& m : merges_) h = std::max(h, m.height);
  return h;
}

int Dendrogram::inversion_count() const {
  int count = 0;
  for (std::size_t i = 1; i < merges_.size(); ++i) {
    if (merges_[i].height < merges_[i - 1].height) ++count;
  }
  return count;
}

std::string Dendrogram::to_json() const {
  nlohmann::json out;
  out["leaves"] = leaf_count_;
  auto& steps = out["merges"] = nlohmann::json::array();
  for (const Merge& m : merges_) {
    steps.push_back({{"left", m.left + 1},
                     {"right", m.right + 1},
                     {"height", m.height},
                     {"size", m.size}});
  }
  return out.dump(2);
}

}  // namespace shc
