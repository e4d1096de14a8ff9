#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

#include "mapseg/image_model.hpp"

namespace mapseg {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<std::array<double, 3>, 3>;

/// Eigen-decomposition of a symmetric 3x3 matrix. `values` are sorted in
/// descending order and `vectors[i]` is the unit eigenvector of `values[i]`.
struct SymmetricEigen3 {
  Vec3 values{};
  std::array<Vec3, 3> vectors{};
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops
/// below 1e-10 or 50 sweeps have run.
SymmetricEigen3 jacobi_eigen3(const Mat3& a);

struct ColorCluster {
  std::vector<std::size_t> members;
  Vec3 mean{};
  Mat3 covariance{};
  double principal_eigenvalue = 0.0;
  Vec3 principal_axis{1.0, 0.0, 0.0};
  std::size_t creation_index = 0;
};

/// Mean, population covariance and principal axis of a set of colours.
/// `members` is filled with 0..colors.size()-1. Throws std::invalid_argument
/// on an empty input.
ColorCluster cluster_stats(std::span<const Rgb> colors);

/// Same, over the image pixels listed in `members`.
ColorCluster cluster_stats(const RgbImage& img, std::vector<std::size_t> members);

inline constexpr std::size_t kDefaultColorCount = 16;
inline constexpr std::size_t kMaxColorCount = 256;

/// Binary principal-axis splitting into at most `m` colour classes.
///
/// Starting from one cluster holding every pixel, the cluster with the
/// largest principal eigenvalue (ties: lowest creation index) is split by
/// the sign of `(color - mean) . axis`, zero going to the non-negative
/// side, until `m` clusters exist or no cluster has positive variance. The
/// negative side is created first. Classes are numbered by creation index
/// and the palette holds each cluster's mean rounded per channel.
///
/// Throws std::invalid_argument if `m` is outside [1, 256].
QuantizedImage quantize(const RgbImage& img, std::size_t m = kDefaultColorCount);

/// Sum over pixels of the squared distance to the assigned palette colour.
double quantization_error(const RgbImage& img, const QuantizedImage& q);

}  // namespace mapseg
