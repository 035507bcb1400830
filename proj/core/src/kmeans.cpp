#include "shc/kmeans.hpp"

#include <limits>
#include <stdexcept>
#include <unordered_set>

#include "shc/rng.hpp"

namespace shc {

namespace {

constexpr int kMaxCycles = 100;

double squared_to_centroid(const Dataset& data, int i, const double* centroid) {
  double acc = 0.0;
  const auto p = data.point(i);
  for (std::size_t d = 0; d < p.size(); ++d) {
    const double diff = p[d] - centroid[d];
    acc += diff * diff;
  }
  return acc;
}

KMeansResult lloyd(const Dataset& data, std::vector<double> centroids, int k) {
  const int n = data.size();
  const int m = data.dim();

  std::vector<int> assignment(n, 0);
  std::vector<int> previous;
  std::vector<int> counts(k, 0);
  std::vector<double> trace;
  int cycles = 0;

  while (cycles < kMaxCycles) {
    ++cycles;

    // Assignment: nearest centroid, ties toward the lowest index.
    counts.assign(k, 0);
    for (int i = 0; i < n; ++i) {
      int best = 0;
      double best_d = squared_to_centroid(data, i, centroids.data());
      for (int c = 1; c < k; ++c) {
        const double d = squared_to_centroid(data, i, centroids.data() + static_cast<std::size_t>(c) * m);
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      assignment[i] = best;
      ++counts[best];
    }

    // Re-seed empty clusters with the point farthest from its own centroid,
    // drawn from clusters that can spare one. This strictly lowers the
    // objective: the moved point now sits on its centroid.
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) continue;
      int donor = -1;
      double worst = -1.0;
      for (int i = 0; i < n; ++i) {
        if (counts[assignment[i]] < 2) continue;
        const double d = squared_to_centroid(
            data, i, centroids.data() + static_cast<std::size_t>(assignment[i]) * m);
        if (d > worst) {
          worst = d;
          donor = i;
        }
      }
      if (donor < 0) throw std::runtime_error("kmeans: cannot repair empty cluster");
      --counts[assignment[donor]];
      assignment[donor] = c;
      counts[c] = 1;
      for (int d = 0; d < m; ++d) {
        centroids[static_cast<std::size_t>(c) * m + d] = data.coord(donor, d);
      }
    }

    const bool stable = (assignment == previous);

    // Update: centroids become cluster means.
    centroids.assign(centroids.size(), 0.0);
    for (int i = 0; i < n; ++i) {
      const auto p = data.point(i);
      double* target = centroids.data() + static_cast<std::size_t>(assignment[i]) * m;
      for (int d = 0; d < m; ++d) target[d] += p[d];
    }
    for (int c = 0; c < k; ++c) {
      double* target = centroids.data() + static_cast<std::size_t>(c) * m;
      for (int d = 0; d < m; ++d) target[d] /= counts[c];
    }

    double objective = 0.0;
    for (int i = 0; i < n; ++i) {
      objective += squared_to_centroid(
          data, i, centroids.data() + static_cast<std::size_t>(assignment[i]) * m);
    }
    trace.push_back(objective);

    if (stable) break;
    previous = assignment;
  }

  std::vector<int> one_based(n);
  for (int i = 0; i < n; ++i) one_based[i] = assignment[i] + 1;
  KMeansResult result{Clustering(std::move(one_based)), std::move(centroids),
                      trace.back(), cycles, std::move(trace)};
  return result;
}

std::vector<double> centroids_from_points(const Dataset& data, std::span<const int> points) {
  const int m = data.dim();
  std::vector<double> centroids(points.size() * m);
  std::unordered_set<int> seen;
  for (std::size_t c = 0; c < points.size(); ++c) {
    const int p = points[c];
    if (p < 0 || p >= data.size()) {
      throw std::invalid_argument("kmeans: initial point index out of range");
    }
    if (!seen.insert(p).second) {
      throw std::invalid_argument("kmeans: initial points must be distinct");
    }
    for (int d = 0; d < m; ++d) centroids[c * m + d] = data.coord(p, d);
  }
  return centroids;
}

}  // namespace

double wss(const Dataset& data, const Clustering& clustering) {
  if (clustering.size() != data.size()) {
    throw std::invalid_argument("wss: clustering and dataset disagree on n");
  }
  const int m = data.dim();
  const int k = clustering.cluster_count();
  std::vector<double> means(static_cast<std::size_t>(k) * m, 0.0);
  std::vector<int> counts(k, 0);
  for (int i = 0; i < data.size(); ++i) {
    const int c = clustering.cluster_of(i) - 1;
    ++counts[c];
    for (int d = 0; d < m; ++d) means[static_cast<std::size_t>(c) * m + d] += data.coord(i, d);
  }
  for (int c = 0; c < k; ++c) {
    for (int d = 0; d < m; ++d) means[static_cast<std::size_t>(c) * m + d] /= counts[c];
  }
  double total = 0.0;
  for (int i = 0; i < data.size(); ++i) {
    const int c = clustering.cluster_of(i) - 1;
    for (int d = 0; d < m; ++d) {
      const double diff = data.coord(i, d) - means[static_cast<std::size_t>(c) * m + d];
      total += diff * diff;
    }
  }
  return total;
}

KMeansResult kmeans(const Dataset& data, int k, std::uint64_t seed) {
  if (k < 1 || k > data.size()) {
    throw std::invalid_argument("kmeans: need 1 <= k <= n");
  }
  Rng rng(seed);
  const std::vector<int> init = rng.sample_without_replacement(data.size(), k);
  return lloyd(data, centroids_from_points(data, init), k);
}

KMeansResult kmeans(const Dataset& data, std::span<const int> initial_points) {
  if (initial_points.empty() || initial_points.size() > static_cast<std::size_t>(data.size())) {
    throw std::invalid_argument("kmeans: need 1 <= k <= n initial points");
  }
  return lloyd(data, centroids_from_points(data, initial_points),
               static_cast<int>(initial_points.size()));
}

}  // namespace shc
