#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "shc/dataset.hpp"

namespace shc {

// Three bivariate normal components, 40 points each, means (2,2), (-2,2),
// (0,-1), variances diag(0.7,0.7) twice and diag(1.5,0.4). Convex clusters
// that overlap slightly. Labels 1..3 attached.
Dataset gen_three_normals(std::uint64_t seed);

// Three intertwined Archimedean spiral arms (radius grows with angle),
// 120 degrees apart, isotropic Gaussian jitter of the given scale.
// Labels 1..3 by arm.
Dataset gen_spiral(int n_per_arm, double noise, std::uint64_t seed);

// Two interleaved half-annuli of different densities: an upper semicircle
// at the origin and a lower semicircle shifted right and up, both of unit
// radius, with isotropic Gaussian jitter. Labels 1 (top) and 2 (bottom).
Dataset gen_half_ring(int n_top, int n_bottom, double noise, std::uint64_t seed);

// Isotropic Gaussian blobs: counts[i] points at centers[i] with the shared
// standard deviation. Labels 1..counts.size().
Dataset gen_blobs(std::span<const int> counts,
                  std::span<const std::array<double, 2>> centers,
                  double sigma, std::uint64_t seed);

// One-dimensional pair of uniform components: n points on [0, a] and n
// points on [2a, 4a]. The second support is twice as wide, so a sensible
// objective splits it first. Labels 1 and 2.
Dataset gen_two_uniform_1d(double a, int n_per_component, std::uint64_t seed);

// Smallest Euclidean distance between points with different labels.
// Generators use it in tests to certify separation; requires labels.
double min_cross_label_distance(const Dataset& data);

// Numeric CSV with optional single header line. `label_column` selects a
// column by header name or by 0-based index given as digits; that column is
// parsed as integer labels and removed from the coordinates. Errors carry
// the 1-based line number.
Dataset load_csv(const std::string& path, const std::optional<std::string>& label_column);

}  // namespace shc
