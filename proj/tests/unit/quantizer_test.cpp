#include "mapseg/quantizer.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "fixtures.hpp"

namespace mapseg {
namespace {

TEST(ClusterStats, SingleMemberHasZeroVariance) {
  const std::vector<Rgb> c{{10, 20, 30}};
  const auto s = cluster_stats(c);
  EXPECT_EQ(s.mean, (Vec3{10, 20, 30}));
  EXPECT_EQ(s.principal_eigenvalue, 0.0);
  for (const auto& row : s.covariance)
    for (double v : row) EXPECT_EQ(v, 0.0);
}

TEST(ClusterStats, TwoMembersAlongRed) {
  const std::vector<Rgb> c{{0, 0, 0}, {2, 0, 0}};
  const auto s = cluster_stats(c);
  EXPECT_EQ(s.mean, (Vec3{1, 0, 0}));
  EXPECT_NEAR(s.principal_eigenvalue, 1.0, 1e-12);
  EXPECT_NEAR(std::abs(s.principal_axis[0]), 1.0, 1e-12);
  EXPECT_NEAR(s.principal_axis[1], 0.0, 1e-12);
  EXPECT_NEAR(s.principal_axis[2], 0.0, 1e-12);
}

TEST(ClusterStats, EmptyThrows) {
  EXPECT_THROW(cluster_stats(std::span<const Rgb>{}), std::invalid_argument);
}

// Two-pass covariance: mean first, then centred products.
TEST(ClusterStats, CovarianceMatchesTwoPassOracle) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto img = testing::random_rgb(rng, 10, 10);
    const auto px = img.pixels();
    Vec3 mean{};
    for (const Rgb& c : px) {
      mean[0] += c.r;
      mean[1] += c.g;
      mean[2] += c.b;
    }
    for (double& x : mean) x /= static_cast<double>(px.size());
    Mat3 cov{};
    for (const Rgb& c : px) {
      const Vec3 d{c.r - mean[0], c.g - mean[1], c.b - mean[2]};
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) cov[i][j] += d[i] * d[j];
    }
    const auto s = cluster_stats(px);
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(s.mean[i], mean[i], 1e-12);
      for (int j = 0; j < 3; ++j) {
        EXPECT_NEAR(s.covariance[i][j], cov[i][j] / static_cast<double>(px.size()), 1e-9);
      }
    }
    // Symmetric PSD, principal pair consistent.
    const auto eig = jacobi_eigen3(s.covariance);
    EXPECT_GE(eig.values[2], -1e-9);
    EXPECT_DOUBLE_EQ(s.principal_eigenvalue, eig.values[0]);
    double norm2 = 0;
    for (double a : s.principal_axis) norm2 += a * a;
    EXPECT_NEAR(std::sqrt(norm2), 1.0, 1e-9);
  }
}

TEST(JacobiEigen3, ReconstructsMatrix) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-100, 100);
  for (int trial = 0; trial < 100; ++trial) {
    Mat3 a{};
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) a[i][j] = a[j][i] = u(rng);
    const auto e = jacobi_eigen3(a);
    EXPECT_LE(e.sweeps, 50);
    EXPECT_GE(e.values[0], e.values[1]);
    EXPECT_GE(e.values[1], e.values[2]);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        double r = 0, dot = 0;
        for (int k = 0; k < 3; ++k) {
          r += e.vectors[k][i] * e.values[k] * e.vectors[k][j];
          dot += e.vectors[i][k] * e.vectors[j][k];
        }
        EXPECT_NEAR(r, a[i][j], 1e-9);
        EXPECT_NEAR(dot, i == j ? 1.0 : 0.0, 1e-12);
      }
    }
  }
}

TEST(Quantize, UniformImageHasOneClass) {
  const RgbImage img(5, 4, Rgb{12, 34, 56});
  const auto q = quantize(img, 16);
  EXPECT_EQ(q.palette_size(), 1u);
  for (auto c : q.indices()) EXPECT_EQ(c, 0u);
  EXPECT_EQ(q.palette()[0], (Rgb{12, 34, 56}));
}

TEST(Quantize, TwoColorsSeparatePerfectly) {
  const auto t = testing::two_region(6, 4);
  const auto q = quantize(t.image, 2);
  ASSERT_EQ(q.palette_size(), 2u);
  for (std::size_t k = 0; k < q.size(); ++k) EXPECT_EQ(q.palette()[q[k]], t.image[k]);
}

TEST(Quantize, FewerDistinctColorsThanRequested) {
  std::vector<Rgb> px;
  for (int i = 0; i < 12; ++i) px.push_back(Rgb{static_cast<std::uint8_t>(i % 3 * 50), 0, 0});
  const auto q = quantize(RgbImage(4, 3, px), 16);
  EXPECT_EQ(q.palette_size(), 3u);
  for (std::size_t k = 0; k < q.size(); ++k) EXPECT_EQ(q.palette()[q[k]], px[k]);
}

TEST(Quantize, RejectsBadClassCount) {
  const RgbImage img(2, 2, Rgb{});
  EXPECT_THROW(quantize(img, 0), std::invalid_argument);
  EXPECT_THROW(quantize(img, 257), std::invalid_argument);
}

TEST(Quantize, BeatsGlobalMeanBaseline) {
  std::mt19937_64 rng(17);
  const auto img = testing::random_rgb(rng, 32, 32);
  Vec3 mean{};
  for (const Rgb& c : img.pixels()) {
    mean[0] += c.r;
    mean[1] += c.g;
    mean[2] += c.b;
  }
  for (double& x : mean) x /= static_cast<double>(img.size());
  double baseline = 0;
  for (const Rgb& c : img.pixels()) {
    const double d0 = c.r - mean[0], d1 = c.g - mean[1], d2 = c.b - mean[2];
    baseline += d0 * d0 + d1 * d1 + d2 * d2;
  }
  const auto q = quantize(img, 16);
  EXPECT_EQ(q.palette_size(), 16u);
  EXPECT_LE(quantization_error(img, q), baseline);
}

TEST(Quantize, PartitionInvariants) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto img = testing::random_rgb(rng, 17, 13);
    const std::size_t m = 1 + rng() % 20;
    const auto q = quantize(img, m);
    EXPECT_EQ(q.palette_size(), m);
    std::size_t total = 0;
    for (auto c : q.class_counts()) {
      EXPECT_GE(c, 1u);
      total += c;
    }
    EXPECT_EQ(total, img.size());
    // Identical colours never end up in different classes.
    for (std::size_t a = 0; a < img.size(); ++a)
      for (std::size_t b = a + 1; b < img.size(); ++b)
        if (img[a] == img[b]) EXPECT_EQ(q[a], q[b]);
  }
}

TEST(Quantize, Deterministic) {
  std::mt19937_64 rng(29);
  const auto img = testing::random_rgb(rng, 24, 24);
  const auto a = quantize(img, 16), b = quantize(img, 16);
  EXPECT_TRUE(std::equal(a.indices().begin(), a.indices().end(), b.indices().begin()));
  EXPECT_TRUE(std::equal(a.palette().begin(), a.palette().end(), b.palette().begin()));
}

TEST(Quantize, IdempotentInClassSizes) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    const auto img = testing::random_rgb(rng, 20, 20);
    const std::size_t m = 2 + rng() % 15;
    const auto first = quantize(img, m);
    const std::set<std::tuple<int, int, int>> distinct = [&] {
      std::set<std::tuple<int, int, int>> s;
      for (const Rgb& c : first.palette()) s.insert({c.r, c.g, c.b});
      return s;
    }();
    ASSERT_EQ(distinct.size(), first.palette_size()) << "palette means collided";
    const auto second = quantize(first.to_rgb(), m);
    std::multiset<std::size_t> sa(first.class_counts().begin(), first.class_counts().end());
    std::multiset<std::size_t> sb(second.class_counts().begin(), second.class_counts().end());
    EXPECT_EQ(sa, sb);
  }
}

}  // namespace
}  // namespace mapseg
