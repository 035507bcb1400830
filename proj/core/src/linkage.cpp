#include "shc/linkage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace shc {

SetDissimilarity SetDissimilarity::percentile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("SetDissimilarity: percentile must be in (0, 1)");
  }
  return SetDissimilarity(false, p);
}

std::string SetDissimilarity::name() const {
  if (minimum_) return "minimum";
  const int whole = static_cast<int>(std::lround(p_ * 100.0));
  if (std::abs(p_ * 100.0 - whole) < 1e-9) {
    return "percentile" + std::to_string(whole);
  }
  return "percentile(" + std::to_string(p_) + ")";
}

namespace {

// Quantile of an already sorted range, type-7 interpolation.
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  if (n == 1) return sorted[0];
  const double h = static_cast<double>(n - 1) * p;
  const std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted[n - 1];
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

void check_sets(std::span<const int> a, std::span<const int> b, int n) {
  if (a.empty() || b.empty()) {
    throw std::invalid_argument("set_dissimilarity: sets must be nonempty");
  }
  for (int i : a) {
    if (i < 0 || i >= n) throw std::invalid_argument("set_dissimilarity: index out of range");
  }
  for (int j : b) {
    if (j < 0 || j >= n) throw std::invalid_argument("set_dissimilarity: index out of range");
    for (int i : a) {
      if (i == j) throw std::invalid_argument("set_dissimilarity: sets must be disjoint");
    }
  }
}

}  // namespace

double quantile_type7(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile_type7: empty input");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile_type7: p must be in [0, 1]");
  std::sort(values.begin(), values.end());
  return quantile_sorted(values, p);
}

double set_dissimilarity(std::span<const int> a, std::span<const int> b,
                         const DissimilarityMatrix& base, SetDissimilarity kind) {
  check_sets(a, b, base.size());
  if (kind.is_minimum()) {
    double best = std::numeric_limits<double>::infinity();
    for (int i : a) {
      for (int j : b) best = std::min(best, base.at(i, j));
    }
    return best;
  }
  std::vector<double> cross;
  cross.reserve(a.size() * b.size());
  for (int i : a) {
    for (int j : b) cross.push_back(base.at(i, j));
  }
  return quantile_type7(std::move(cross), kind.percentile_value());
}

namespace {

std::vector<double> merge_sorted(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), out.begin());
  return out;
}

}  // namespace

Dendrogram single_linkage(const std::vector<std::vector<int>>& items,
                          const DissimilarityMatrix& base, SetDissimilarity kind) {
  const int k0 = static_cast<int>(items.size());
  if (k0 < 2) throw std::invalid_argument("single_linkage: need at least two items");
  {
    std::vector<bool> used(base.size(), false);
    for (const auto& item : items) {
      if (item.empty()) throw std::invalid_argument("single_linkage: empty item");
      for (int p : item) {
        if (p < 0 || p >= base.size() || used[p]) {
          throw std::invalid_argument("single_linkage: items must be disjoint valid indices");
        }
        used[p] = true;
      }
    }
  }

  const int total = 2 * k0 - 1;
  const bool percentile = !kind.is_minimum();
  const double p = percentile ? kind.percentile_value() : 0.0;

  auto slot = [total](int a, int b) { return static_cast<std::size_t>(a) * total + b; };
  std::vector<double> dist(static_cast<std::size_t>(total) * total, 0.0);
  // For the percentile kind every active pair keeps its sorted cross-set
  // distances; a merge concatenates two sorted runs and reads the quantile
  // off the result instead of re-scanning all point pairs.
  std::vector<std::vector<double>> cross;
  if (percentile) cross.resize(static_cast<std::size_t>(total) * total);

  for (int i = 0; i < k0; ++i) {
    for (int j = i + 1; j < k0; ++j) {
      if (percentile) {
        std::vector<double> values;
        values.reserve(items[i].size() * items[j].size());
        for (int a : items[i]) {
          for (int b : items[j]) values.push_back(base.at(a, b));
        }
        std::sort(values.begin(), values.end());
        dist[slot(i, j)] = quantile_sorted(values, p);
        cross[slot(i, j)] = std::move(values);
      } else {
        double best = std::numeric_limits<double>::infinity();
        for (int a : items[i]) {
          for (int b : items[j]) best = std::min(best, base.at(a, b));
        }
        dist[slot(i, j)] = best;
      }
    }
  }

  std::vector<int> active(k0);
  for (int i = 0; i < k0; ++i) active[i] = i;
  std::vector<int> sizes(total, 1);
  std::vector<Merge> merges;
  merges.reserve(k0 - 1);

  for (int round = 0; round < k0 - 1; ++round) {
    // Active ids stay ascending (new nodes get the largest id), so a
    // row-major scan visits pairs in lexicographic id order and keeping the
    // first strict minimum applies the tie-break.
    int best_x = -1, best_y = -1;
    double best_d = std::numeric_limits<double>::infinity();
    const int alive = static_cast<int>(active.size());
    for (int x = 0; x < alive; ++x) {
      for (int y = x + 1; y < alive; ++y) {
        const double d = dist[slot(active[x], active[y])];
        if (d < best_d) {
          best_d = d;
          best_x = x;
          best_y = y;
        }
      }
    }

    const int a = active[best_x];
    const int b = active[best_y];
    const int created = k0 + round;
    sizes[created] = sizes[a] + sizes[b];
    merges.push_back({a, b, best_d, sizes[created]});

    active.erase(active.begin() + best_y);
    active.erase(active.begin() + best_x);
    for (int c : active) {
      const int lo_a = std::min(a, c), hi_a = std::max(a, c);
      const int lo_b = std::min(b, c), hi_b = std::max(b, c);
      if (percentile) {
        auto merged = merge_sorted(cross[slot(lo_a, hi_a)], cross[slot(lo_b, hi_b)]);
        dist[slot(c, created)] = quantile_sorted(merged, p);
        cross[slot(c, created)] = std::move(merged);
        cross[slot(lo_a, hi_a)] = {};
        cross[slot(lo_b, hi_b)] = {};
      } else {
        dist[slot(c, created)] = std::min(dist[slot(lo_a, hi_a)], dist[slot(lo_b, hi_b)]);
      }
      dist[slot(created, c)] = dist[slot(c, created)];
    }
    active.push_back(created);
  }

  return Dendrogram(k0, std::move(merges));
}

Dendrogram single_linkage(const DissimilarityMatrix& base, SetDissimilarity kind) {
  std::vector<std::vector<int>> items(base.size());
  for (int i = 0; i < base.size(); ++i) items[i] = {i};
  return single_linkage(items, base, kind);
}

namespace {

// Union-find over leaves; each internal node is tracked by a representative leaf.
struct LeafUnion {
  explicit LeafUnion(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(b)] = find(a); }
  std::vector<int> parent;
};

}  // namespace

CutResult cut(const Dendrogram& tree, int k) {
  const int n = tree.leaf_count();
  if (k < 1 || k > n) throw std::invalid_argument("cut: need 1 <= k <= leaf count");

  const auto& merges = tree.merges();
  // rep[node]: one leaf inside that node's subtree.
  std::vector<int> rep(n + merges.size());
  for (int i = 0; i < n; ++i) rep[i] = i;
  LeafUnion uf(n);
  for (int i = 0; i < n - k; ++i) {
    uf.unite(rep[merges[i].left], rep[merges[i].right]);
    rep[n + i] = rep[merges[i].left];
  }

  std::vector<int> label(n, 0);
  int next = 0;
  std::vector<int> assignment(n);
  for (int i = 0; i < n; ++i) {
    const int root = uf.find(i);
    if (label[root] == 0) label[root] = ++next;
    assignment[i] = label[root];
  }

  const double height = (k == n) ? 0.0 : merges[n - k - 1].height;
  const double h_k = (k == 1) ? std::numeric_limits<double>::infinity()
                              : merges[n - k].height;
  return CutResult{Clustering(std::move(assignment)), height, h_k};
}

int clusters_at_threshold(const Dendrogram& tree, double threshold) {
  int above = 0;
  for (const Merge& m : tree.merges()) {
    if (m.height > threshold) ++above;
  }
  return above + 1;
}

BranchLengths branch_lengths(const Dendrogram& tree, int k) {
  const int n = tree.leaf_count();
  if (k < 2 || k > n) throw std::invalid_argument("branch_lengths: need 2 <= k <= leaf count");

  const auto& merges = tree.merges();
  const double h_k = merges[n - k].height;

  std::vector<double> creation(n + merges.size(), 0.0);
  std::vector<bool> alive(n + merges.size(), false);
  for (int i = 0; i < n; ++i) alive[i] = true;
  for (int i = 0; i < n - k; ++i) {
    alive[merges[i].left] = false;
    alive[merges[i].right] = false;
    alive[n + i] = true;
    creation[n + i] = merges[i].height;
  }

  BranchLengths out;
  out.lengths.reserve(k);
  for (std::size_t node = 0; node < alive.size(); ++node) {
    if (alive[node]) out.lengths.push_back(h_k - creation[node]);
  }
  double sum = 0.0;
  for (double v : out.lengths) sum += v;
  out.mean = sum / static_cast<double>(out.lengths.size());
  return out;
}

std::vector<Lifetime> lifetimes(const Dendrogram& tree) {
  const int n = tree.leaf_count();
  if (n < 2) throw std::invalid_argument("lifetimes: need at least two leaves");
  const auto& merges = tree.merges();
  std::vector<Lifetime> out;
  out.reserve(n - 1);
  for (int k = 2; k <= n; ++k) {
    const double upper = merges[n - k].height;
    const double lower = (n - k - 1 >= 0) ? merges[n - k - 1].height : 0.0;
    out.push_back({k, upper - lower});
  }
  return out;
}

}  // namespace shc
