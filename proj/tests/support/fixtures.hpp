#pragma once

// Instance generators shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "mapseg/image_model.hpp"

namespace mapseg::testing {

inline constexpr Rgb kColorA{200, 40, 40};
inline constexpr Rgb kColorB{30, 60, 210};

inline QuantizedImage random_quantized(std::mt19937_64& rng, std::size_t w, std::size_t h,
                                       std::size_t m) {
  std::uniform_int_distribution<ClassIndex> cls(0, static_cast<ClassIndex>(m - 1));
  std::vector<ClassIndex> idx(w * h);
  for (auto& c : idx) c = cls(rng);
  return QuantizedImage::from_indices(w, h, std::move(idx));
}

inline LabelField random_labels(std::mt19937_64& rng, std::size_t w, std::size_t h) {
  std::bernoulli_distribution coin(0.5);
  std::vector<Label> l(w * h);
  for (auto& x : l) x = coin(rng) ? Label::fore : Label::back;
  return LabelField(w, h, std::move(l));
}

inline RgbImage random_rgb(std::mt19937_64& rng, std::size_t w, std::size_t h) {
  std::uniform_int_distribution<int> ch(0, 255);
  std::vector<Rgb> px(w * h);
  for (auto& p : px) {
    p = Rgb{static_cast<std::uint8_t>(ch(rng)), static_cast<std::uint8_t>(ch(rng)),
            static_cast<std::uint8_t>(ch(rng))};
  }
  return RgbImage(w, h, std::move(px));
}

inline std::vector<double> random_vector(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

struct TwoRegion {
  RgbImage image;
  LabelField truth;  // left half fore
};

/// Left half colour A, right half colour B; then exactly
/// round(noise * n) pixels, chosen uniformly, take the other colour.
inline TwoRegion two_region(std::size_t w, std::size_t h, double noise = 0.0,
                            std::uint64_t seed = 1) {
  std::vector<Rgb> px(w * h);
  std::vector<Label> truth(w * h);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const bool left = x < w / 2;
      px[y * w + x] = left ? kColorA : kColorB;
      truth[y * w + x] = left ? Label::fore : Label::back;
    }
  }
  if (noise > 0.0) {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> order(w * h);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::shuffle(order.begin(), order.end(), rng);
    const auto flips = static_cast<std::size_t>(std::lround(noise * static_cast<double>(w * h)));
    for (std::size_t i = 0; i < flips; ++i) {
      Rgb& c = px[order[i]];
      c = (c == kColorA) ? kColorB : kColorA;
    }
  }
  return {RgbImage(w, h, std::move(px)), LabelField(w, h, std::move(truth))};
}

/// Class image matching `two_region`: colour A is class 0.
inline QuantizedImage two_region_classes(const TwoRegion& t) {
  std::vector<ClassIndex> idx(t.image.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = t.image[k] == kColorA ? 0 : 1;
  return QuantizedImage::from_indices(t.image.width(), t.image.height(), std::move(idx),
                                      {kColorA, kColorB});
}

}  // namespace mapseg::testing
