#include "shc/score.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "shc/dissimilarity.hpp"
#include "shc/linkage.hpp"
#include "shc/kmeans.hpp"
#include "shc/parallel.hpp"
#include "shc/rng.hpp"

namespace shc {

namespace {

// Maximum-weight perfect matching on a square profit matrix via the
// potentials form of the assignment algorithm, O(s^3).
long long best_assignment(const std::vector<std::vector<long long>>& profit) {
  const int s = static_cast<int>(profit.size());
  long long top = 0;
  for (const auto& row : profit) {
    for (long long v : row) top = std::max(top, v);
  }
  // Minimize cost = top - profit.
  const long long kInf = std::numeric_limits<long long>::max() / 4;
  std::vector<long long> u(s + 1, 0), v(s + 1, 0);
  std::vector<int> match(s + 1, 0), way(s + 1, 0);
  for (int i = 1; i <= s; ++i) {
    match[0] = i;
    int j0 = 0;
    std::vector<long long> minv(s + 1, kInf);
    std::vector<bool> used(s + 1, false);
    do {
      used[j0] = true;
      const int i0 = match[j0];
      long long delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= s; ++j) {
        if (used[j]) continue;
        const long long cur = (top - profit[i0 - 1][j - 1]) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= s; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const int j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0);
  }
  long long total = 0;
  for (int j = 1; j <= s; ++j) total += profit[match[j] - 1][j - 1];
  return total;
}

double sample_sd(const std::vector<double>& values, double mean) {
  if (values.size() < 2) return 0.0;
  double acc = 0.0;
  for (double v : values) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / static_cast<double>(values.size() - 1));
}

}  // namespace

double accuracy_index(const Clustering& predicted, std::span<const int> truth) {
  const int n = predicted.size();
  if (truth.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("accuracy_index: clustering and truth disagree on n");
  }
  const Clustering reference{std::vector<int>(truth.begin(), truth.end())};
  const int s = std::max(predicted.cluster_count(), reference.cluster_count());
  std::vector<std::vector<long long>> table(s, std::vector<long long>(s, 0));
  for (int i = 0; i < n; ++i) {
    ++table[predicted.cluster_of(i) - 1][reference.cluster_of(i) - 1];
  }
  return static_cast<double>(best_assignment(table)) / static_cast<double>(n);
}

ScoreReport repeat_and_score(const ClusterMethod& method, const Dataset& data,
                             std::span<const std::uint64_t> seeds) {
  if (!data.has_labels()) {
    throw std::invalid_argument("repeat_and_score: dataset has no ground truth");
  }
  if (seeds.empty()) throw std::invalid_argument("repeat_and_score: need >= 1 run");
  ScoreReport report;
  report.runs = static_cast<int>(seeds.size());
  report.per_run.assign(seeds.size(), 0.0);
  for (std::size_t r = 0; r < seeds.size(); ++r) {
    const Clustering result = method(data, seeds[r]);
    report.per_run[r] = accuracy_index(result, data.labels());
  }
  double sum = 0.0;
  for (double v : report.per_run) sum += v;
  report.mai = sum / static_cast<double>(report.runs);
  report.sai = sample_sd(report.per_run, report.mai);
  return report;
}

ScoreReport repeat_and_score(const ClusterMethod& method, const Dataset& data,
                             int runs, std::uint64_t base_seed) {
  if (runs < 1) throw std::invalid_argument("repeat_and_score: need >= 1 run");
  std::vector<std::uint64_t> seeds(runs);
  for (int r = 0; r < runs; ++r) seeds[r] = derive_seed(base_seed, static_cast<std::uint64_t>(r));
  return repeat_and_score(method, data, seeds);
}

Clustering eac_baseline(const Dataset& data, int b, int k_max, int k, std::uint64_t seed) {
  const int n = data.size();
  if (b < 1) throw std::invalid_argument("eac_baseline: need b >= 1");
  if (k_max < 2 || k_max > n) throw std::invalid_argument("eac_baseline: need 2 <= k_max <= n");
  if (k < 1 || k > n) throw std::invalid_argument("eac_baseline: need 1 <= k <= n");

  std::vector<std::vector<int>> assignments(b);
  parallel_for(0, b, [&](int t) {
    const std::uint64_t iteration_seed = derive_seed(seed, static_cast<std::uint64_t>(t));
    Rng draws(iteration_seed);
    const int kt = static_cast<int>(draws.uniform_int(2, k_max));
    assignments[t] = kmeans(data, kt, derive_seed(iteration_seed, 1)).clustering.assignment();
  });

  std::vector<double> co(static_cast<std::size_t>(n) * n, 0.0);
  for (const auto& a : assignments) {
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (a[i] == a[j]) {
          co[static_cast<std::size_t>(i) * n + j] += 1.0;
          co[static_cast<std::size_t>(j) * n + i] += 1.0;
        }
      }
    }
  }
  std::vector<double> dist(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) {
        dist[static_cast<std::size_t>(i) * n + j] =
            1.0 - co[static_cast<std::size_t>(i) * n + j] / static_cast<double>(b);
      }
    }
  }
  const DissimilarityMatrix matrix(n, std::move(dist), DissimKind::precomputed);
  const Dendrogram tree = single_linkage(matrix, SetDissimilarity::minimum());
  return cut(tree, k).clustering;
}

std::string render_score_table(std::span<const std::string> names,
                               std::span<const ScoreReport> reports) {
  if (names.size() != reports.size()) {
    throw std::invalid_argument("render_score_table: names and reports disagree");
  }
  std::vector<std::size_t> widths(names.size());
  for (std::size_t c = 0; c < names.size(); ++c) widths[c] = std::max<std::size_t>(names[c].size(), 6);

  auto cell = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return std::string(buf);
  };

  std::string out = "      ";
  for (std::size_t c = 0; c < names.size(); ++c) {
    out += "  ";
    out += std::string(widths[c] - names[c].size(), ' ') + names[c];
  }
  out += "\n";
  const char* rows[2] = {"MAI", "SAI"};
  for (int r = 0; r < 2; ++r) {
    out += rows[r];
    out += std::string(6 - std::string(rows[r]).size(), ' ');
    for (std::size_t c = 0; c < names.size(); ++c) {
      const std::string v = cell(r == 0 ? reports[c].mai : reports[c].sai);
      out += "  " + std::string(widths[c] - v.size(), ' ') + v;
    }
    out += "\n";
  }
  return out;
}

std::string render_score_json(std::span<const std::string> names,
                              std::span<const ScoreReport> reports) {
  if (names.size() != reports.size()) {
    throw std::invalid_argument("render_score_json: names and reports disagree");
  }
  nlohmann::json out;
  out["methods"] = nlohmann::json::array();
  for (std::size_t c = 0; c < names.size(); ++c) {
    out["methods"].push_back({{"name", names[c]},
                              {"mai", reports[c].mai},
                              {"sai", reports[c].sai},
                              {"runs", reports[c].runs},
                              {"ai", reports[c].per_run}});
  }
  return out.dump(2);
}

}  // namespace shc
