#include "mapseg/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace mapseg {

namespace {

constexpr double kJacobiTolerance = 1e-10;
constexpr int kJacobiMaxSweeps = 50;

double off_diagonal_norm(const Mat3& a) {
  return std::sqrt(2.0 * (a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2]));
}

// Fixes the sign so the largest-magnitude component is positive.
void canonical_sign(Vec3& v) {
  std::size_t big = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (std::abs(v[i]) > std::abs(v[big])) big = i;
  }
  if (v[big] < 0) {
    for (double& c : v) c = -c;
  }
}

struct ColorSums {
  std::uint64_t count = 0;
  std::array<std::uint64_t, 3> s{};
  std::array<std::uint64_t, 6> ss{};  // rr rg rb gg gb bb

  void add(const Rgb& c) {
    const std::uint64_t r = c.r, g = c.g, b = c.b;
    ++count;
    s[0] += r;
    s[1] += g;
    s[2] += b;
    ss[0] += r * r;
    ss[1] += r * g;
    ss[2] += r * b;
    ss[3] += g * g;
    ss[4] += g * b;
    ss[5] += b * b;
  }
};

void finish_stats(const ColorSums& sums, ColorCluster& c) {
  const double n = static_cast<double>(sums.count);
  for (std::size_t i = 0; i < 3; ++i) c.mean[i] = static_cast<double>(sums.s[i]) / n;
  constexpr std::size_t kRow[6] = {0, 0, 0, 1, 1, 2};
  constexpr std::size_t kCol[6] = {0, 1, 2, 1, 2, 2};
  for (std::size_t e = 0; e < 6; ++e) {
    const std::size_t i = kRow[e], j = kCol[e];
    const double v = static_cast<double>(sums.ss[e]) / n - c.mean[i] * c.mean[j];
    c.covariance[i][j] = v;
    c.covariance[j][i] = v;
  }
  const SymmetricEigen3 eig = jacobi_eigen3(c.covariance);
  c.principal_eigenvalue = eig.values[0];
  c.principal_axis = eig.vectors[0];
}

double channel(const Rgb& c, std::size_t i) {
  return i == 0 ? c.r : (i == 1 ? c.g : c.b);
}

}  // namespace

SymmetricEigen3 jacobi_eigen3(const Mat3& input) {
  Mat3 a = input;
  Mat3 v{};
  for (std::size_t i = 0; i < 3; ++i) v[i][i] = 1.0;

  int sweep = 0;
  while (sweep < kJacobiMaxSweeps && off_diagonal_norm(a) >= kJacobiTolerance) {
    ++sweep;
    for (std::size_t p = 0; p < 2; ++p) {
      for (std::size_t q = p + 1; q < 3; ++q) {
        if (a[p][q] == 0.0) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < 3; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < 3; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < 3; ++k) {
          const double vkp = v[k][p], vkq = v[k][q];
          v[k][p] = c * vkp - s * vkq;
          v[k][q] = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<std::size_t, 3> order{0, 1, 2};
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a[i][i] > a[j][j]; });
  SymmetricEigen3 out;
  out.sweeps = sweep;
  for (std::size_t r = 0; r < 3; ++r) {
    const std::size_t col = order[r];
    out.values[r] = a[col][col];
    for (std::size_t k = 0; k < 3; ++k) out.vectors[r][k] = v[k][col];
    canonical_sign(out.vectors[r]);
  }
  return out;
}

ColorCluster cluster_stats(std::span<const Rgb> colors) {
  if (colors.empty()) throw std::invalid_argument("cluster_stats: no members");
  ColorSums sums;
  for (const Rgb& c : colors) sums.add(c);
  ColorCluster out;
  out.members.resize(colors.size());
  for (std::size_t i = 0; i < colors.size(); ++i) out.members[i] = i;
  finish_stats(sums, out);
  return out;
}

ColorCluster cluster_stats(const RgbImage& img, std::vector<std::size_t> members) {
  if (members.empty()) throw std::invalid_argument("cluster_stats: no members");
  ColorSums sums;
  for (std::size_t k : members) sums.add(img[k]);
  ColorCluster out;
  out.members = std::move(members);
  finish_stats(sums, out);
  return out;
}

QuantizedImage quantize(const RgbImage& img, std::size_t m) {
  if (m < 1 || m > kMaxColorCount) {
    throw std::invalid_argument("color count must be in [1, 256], got " + std::to_string(m));
  }
  if (img.size() == 0) throw std::invalid_argument("quantize: empty image");

  std::vector<std::size_t> all(img.size());
  for (std::size_t k = 0; k < all.size(); ++k) all[k] = k;

  std::vector<ColorCluster> leaves;
  std::vector<bool> splittable;
  leaves.push_back(cluster_stats(img, std::move(all)));
  splittable.push_back(true);
  std::size_t next_creation = 1;

  while (leaves.size() < m) {
    std::size_t pick = leaves.size();
    for (std::size_t i = 0; i < leaves.size(); ++i) {
      if (!splittable[i] || !(leaves[i].principal_eigenvalue > 0.0)) continue;
      if (pick == leaves.size() ||
          leaves[i].principal_eigenvalue > leaves[pick].principal_eigenvalue ||
          (leaves[i].principal_eigenvalue == leaves[pick].principal_eigenvalue &&
           leaves[i].creation_index < leaves[pick].creation_index)) {
        pick = i;
      }
    }
    if (pick == leaves.size()) break;

    const ColorCluster& parent = leaves[pick];
    std::vector<std::size_t> neg, nonneg;
    for (std::size_t k : parent.members) {
      double proj = 0.0;
      for (std::size_t i = 0; i < 3; ++i) {
        proj += (channel(img[k], i) - parent.mean[i]) * parent.principal_axis[i];
      }
      (proj < 0.0 ? neg : nonneg).push_back(k);
    }
    if (neg.empty() || nonneg.empty()) {
      // Rounding-level variance with every member on one side.
      splittable[pick] = false;
      continue;
    }

    ColorCluster lo = cluster_stats(img, std::move(neg));
    ColorCluster hi = cluster_stats(img, std::move(nonneg));
    lo.creation_index = next_creation++;
    hi.creation_index = next_creation++;
    leaves[pick] = std::move(lo);
    splittable[pick] = true;
    leaves.push_back(std::move(hi));
    splittable.push_back(true);
  }

  std::sort(leaves.begin(), leaves.end(), [](const ColorCluster& a, const ColorCluster& b) {
    return a.creation_index < b.creation_index;
  });

  std::vector<ClassIndex> indices(img.size(), 0);
  std::vector<Rgb> palette(leaves.size());
  for (std::size_t c = 0; c < leaves.size(); ++c) {
    for (std::size_t k : leaves[c].members) indices[k] = static_cast<ClassIndex>(c);
    auto round_channel = [&](std::size_t i) {
      return static_cast<std::uint8_t>(std::clamp(std::lround(leaves[c].mean[i]), 0L, 255L));
    };
    palette[c] = Rgb{round_channel(0), round_channel(1), round_channel(2)};
  }
  return QuantizedImage::from_indices(img.width(), img.height(), std::move(indices),
                                      std::move(palette));
}

double quantization_error(const RgbImage& img, const QuantizedImage& q) {
  if (img.width() != q.width() || img.height() != q.height()) {
    throw std::invalid_argument("quantization_error: size mismatch");
  }
  double err = 0.0;
  for (std::size_t k = 0; k < img.size(); ++k) {
    const Rgb& a = img[k];
    const Rgb& b = q.palette()[q[k]];
    const double dr = double(a.r) - b.r, dg = double(a.g) - b.g, db = double(a.b) - b.b;
    err += dr * dr + dg * dg + db * db;
  }
  return err;
}

}  // namespace mapseg
