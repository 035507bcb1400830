#include "shc/datasets.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "shc/rng.hpp"

namespace shc {

Dataset gen_three_normals(std::uint64_t seed) {
  constexpr int kPerComponent = 40;
  const double means[3][2] = {{2.0, 2.0}, {-2.0, 2.0}, {0.0, -1.0}};
  const double variances[3][2] = {{0.7, 0.7}, {0.7, 0.7}, {1.5, 0.4}};

  Rng rng(seed);
  std::vector<double> values;
  values.reserve(3 * kPerComponent * 2);
  std::vector<int> labels;
  labels.reserve(3 * kPerComponent);
  for (int j = 0; j < 3; ++j) {
    const double sd_x = std::sqrt(variances[j][0]);
    const double sd_y = std::sqrt(variances[j][1]);
    for (int i = 0; i < kPerComponent; ++i) {
      values.push_back(rng.normal(means[j][0], sd_x));
      values.push_back(rng.normal(means[j][1], sd_y));
      labels.push_back(j + 1);
    }
  }
  return Dataset(std::move(values), 3 * kPerComponent, 2, std::move(labels), "three_normals");
}

namespace {

// Arc length of the spiral r = t measured from t = 1.
double spiral_arc_length(double t) {
  const auto antiderivative = [](double u) {
    return 0.5 * (u * std::sqrt(1.0 + u * u) + std::asinh(u));
  };
  return antiderivative(t) - antiderivative(1.0);
}

// Parameter value at which the arc length reaches `target`.
double spiral_parameter_at(double target, double t_max) {
  double lo = 1.0;
  double hi = t_max;
  for (int step = 0; step < 80; ++step) {
    const double mid = 0.5 * (lo + hi);
    (spiral_arc_length(mid) < target ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Dataset gen_spiral(int n_per_arm, double noise, std::uint64_t seed) {
  if (n_per_arm < 1) throw std::invalid_argument("gen_spiral: need n_per_arm >= 1");
  if (noise < 0.0) throw std::invalid_argument("gen_spiral: noise must be >= 0");

  // Points are equally spaced along each arm's arc, not in angle, so the
  // outer windings are as dense as the inner ones.
  const double t_max = 1.0 + 1.5 * std::numbers::pi;
  const double total_arc = spiral_arc_length(t_max);

  Rng rng(seed);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(3 * n_per_arm) * 2);
  std::vector<int> labels;
  labels.reserve(3 * n_per_arm);
  for (int arm = 0; arm < 3; ++arm) {
    const double offset = 2.0 * std::numbers::pi * arm / 3.0;
    for (int i = 0; i < n_per_arm; ++i) {
      const double progress = n_per_arm > 1 ? static_cast<double>(i) / (n_per_arm - 1) : 0.0;
      const double t = spiral_parameter_at(progress * total_arc, t_max);
      values.push_back(t * std::cos(t + offset) + noise * rng.normal());
      values.push_back(t * std::sin(t + offset) + noise * rng.normal());
      labels.push_back(arm + 1);
    }
  }
  return Dataset(std::move(values), 3 * n_per_arm, 2, std::move(labels), "spiral");
}

Dataset gen_half_ring(int n_top, int n_bottom, double noise, std::uint64_t seed) {
  if (n_top < 1 || n_bottom < 1) throw std::invalid_argument("gen_half_ring: need sizes >= 1");
  if (noise < 0.0) throw std::invalid_argument("gen_half_ring: noise must be >= 0");

  Rng rng(seed);
  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(n_top + n_bottom) * 2);
  std::vector<int> labels;
  labels.reserve(n_top + n_bottom);
  for (int i = 0; i < n_top; ++i) {
    const double theta = std::numbers::pi * (n_top > 1 ? static_cast<double>(i) / (n_top - 1) : 0.5);
    values.push_back(std::cos(theta) + noise * rng.normal());
    values.push_back(std::sin(theta) + noise * rng.normal());
    labels.push_back(1);
  }
  for (int i = 0; i < n_bottom; ++i) {
    const double theta =
        std::numbers::pi * (n_bottom > 1 ? static_cast<double>(i) / (n_bottom - 1) : 0.5);
    values.push_back(1.0 + std::cos(-theta) + noise * rng.normal());
    values.push_back(0.4 - std::sin(theta) + noise * rng.normal());
    labels.push_back(2);
  }
  return Dataset(std::move(values), n_top + n_bottom, 2, std::move(labels), "half_ring");
}

Dataset gen_blobs(std::span<const int> counts,
                  std::span<const std::array<double, 2>> centers,
                  double sigma, std::uint64_t seed) {
  if (counts.empty() || counts.size() != centers.size()) {
    throw std::invalid_argument("gen_blobs: counts and centers must match and be nonempty");
  }
  if (sigma < 0.0) throw std::invalid_argument("gen_blobs: sigma must be >= 0");
  Rng rng(seed);
  std::vector<double> values;
  std::vector<int> labels;
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] < 1) throw std::invalid_argument("gen_blobs: counts must be >= 1");
    for (int i = 0; i < counts[c]; ++i) {
      values.push_back(rng.normal(centers[c][0], sigma));
      values.push_back(rng.normal(centers[c][1], sigma));
      labels.push_back(static_cast<int>(c) + 1);
    }
  }
  const int n = static_cast<int>(labels.size());
  return Dataset(std::move(values), n, 2, std::move(labels), "blobs");
}

Dataset gen_two_uniform_1d(double a, int n_per_component, std::uint64_t seed) {
  if (a <= 0.0) throw std::invalid_argument("gen_two_uniform_1d: need a > 0");
  if (n_per_component < 1) throw std::invalid_argument("gen_two_uniform_1d: need n >= 1");
  Rng rng(seed);
  std::vector<double> values;
  values.reserve(2 * n_per_component);
  std::vector<int> labels;
  labels.reserve(2 * n_per_component);
  for (int i = 0; i < n_per_component; ++i) {
    values.push_back(a * rng.uniform01());
    labels.push_back(1);
  }
  for (int i = 0; i < n_per_component; ++i) {
    values.push_back(2.0 * a + 2.0 * a * rng.uniform01());
    labels.push_back(2);
  }
  return Dataset(std::move(values), 2 * n_per_component, 1, std::move(labels), "two_uniform_1d");
}

double min_cross_label_distance(const Dataset& data) {
  if (!data.has_labels()) {
    throw std::invalid_argument("min_cross_label_distance: dataset has no labels");
  }
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i < data.size(); ++i) {
    for (int j = i + 1; j < data.size(); ++j) {
      if (data.labels()[i] == data.labels()[j]) continue;
      best = std::min(best, squared_distance(data, i, j));
    }
  }
  return std::sqrt(best);
}

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream stream(line);
  while (std::getline(stream, cell, ',')) {
    // Trim surrounding whitespace.
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? "" : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_double(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(cell.c_str(), &end);
  return end == cell.c_str() + cell.size() && errno == 0;
}

bool parse_int(const std::string& cell, long& out) {
  if (cell.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtol(cell.c_str(), &end, 10);
  return end == cell.c_str() + cell.size() && errno == 0;
}

[[noreturn]] void fail_at(const std::string& path, std::size_t line_number, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line_number) + ": " + what);
}

}  // namespace

Dataset load_csv(const std::string& path, const std::optional<std::string>& label_column) {
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open " + path);

  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(file, line)) {
    ++line_number;
    if (line.empty() || line == "\r") continue;
    rows.push_back(split_row(line));
    line_numbers.push_back(line_number);
  }
  if (rows.empty()) throw std::runtime_error(path + ": no data rows");

  // A first line with any non-numeric cell is a header.
  bool has_header = false;
  for (const std::string& cell : rows.front()) {
    double ignored;
    if (!parse_double(cell, ignored)) {
      has_header = true;
      break;
    }
  }
  std::vector<std::string> header;
  if (has_header) {
    header = rows.front();
    rows.erase(rows.begin());
    line_numbers.erase(line_numbers.begin());
    if (rows.empty()) throw std::runtime_error(path + ": header but no data rows");
  }

  const std::size_t columns = rows.front().size();
  if (columns == 0) fail_at(path, line_numbers.front(), "empty row");

  int label_index = -1;
  if (label_column) {
    long parsed;
    if (parse_int(*label_column, parsed)) {
      if (parsed < 0 || parsed >= static_cast<long>(columns)) {
        throw std::runtime_error(path + ": label column index " + *label_column +
                                 " out of range for " + std::to_string(columns) + " columns");
      }
      label_index = static_cast<int>(parsed);
    } else {
      for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == *label_column) label_index = static_cast<int>(c);
      }
      if (label_index < 0) {
        throw std::runtime_error(path + ": no column named '" + *label_column + "'");
      }
    }
    if (columns < 2) fail_at(path, line_numbers.front(), "need a data column besides the labels");
  }

  const int m = static_cast<int>(columns) - (label_index >= 0 ? 1 : 0);
  std::vector<double> values;
  values.reserve(rows.size() * m);
  std::vector<int> labels;
  if (label_index >= 0) labels.reserve(rows.size());

  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != columns) {
      fail_at(path, line_numbers[r],
              "expected " + std::to_string(columns) + " cells, found " +
                  std::to_string(rows[r].size()));
    }
    for (std::size_t c = 0; c < columns; ++c) {
      if (static_cast<int>(c) == label_index) {
        long value;
        if (!parse_int(rows[r][c], value)) {
          fail_at(path, line_numbers[r], "label cell '" + rows[r][c] + "' is not an integer");
        }
        labels.push_back(static_cast<int>(value));
      } else {
        double value;
        if (!parse_double(rows[r][c], value) || !std::isfinite(value)) {
          fail_at(path, line_numbers[r], "cell '" + rows[r][c] + "' is not a finite number");
        }
        values.push_back(value);
      }
    }
  }

  std::optional<std::vector<int>> label_opt;
  if (label_index >= 0) label_opt = std::move(labels);
  return Dataset(std::move(values), static_cast<int>(rows.size()), m, std::move(label_opt), path);
}

}  // namespace shc
