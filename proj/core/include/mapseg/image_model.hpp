#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace mapseg {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// 8-bit RGB image stored row-major.
class RgbImage {
 public:
  RgbImage() = default;
  /// Throws std::invalid_argument if a dimension is zero or
  /// `pixels.size() != width * height`.
  RgbImage(std::size_t width, std::size_t height, std::vector<Rgb> pixels);
  RgbImage(std::size_t width, std::size_t height, Rgb fill);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return pixels_.size(); }
  std::span<const Rgb> pixels() const { return pixels_; }

  const Rgb& at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }
  const Rgb& operator[](std::size_t k) const { return pixels_[k]; }

  friend bool operator==(const RgbImage&, const RgbImage&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<Rgb> pixels_;
};

using ClassIndex = std::uint32_t;

/// Palette-indexed image: the only input the numeric pipeline consumes.
///
/// Every palette class is non-empty. Construction through `from_indices`
/// drops unused classes and renumbers the rest in increasing order of their
/// original index, so `class_count(i) >= 1` for all `i < palette_size()`.
class QuantizedImage {
 public:
  QuantizedImage() = default;

  /// Builds from raw class indices. `palette` may be empty, in which case
  /// every class gets a black placeholder colour; otherwise it must have an
  /// entry for every index value that occurs.
  static QuantizedImage from_indices(std::size_t width, std::size_t height,
                                     std::vector<ClassIndex> indices,
                                     std::vector<Rgb> palette = {});

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return indices_.size(); }
  std::size_t palette_size() const { return palette_.size(); }

  std::span<const ClassIndex> indices() const { return indices_; }
  std::span<const Rgb> palette() const { return palette_; }
  std::span<const std::size_t> class_counts() const { return class_counts_; }

  ClassIndex operator[](std::size_t k) const { return indices_[k]; }
  std::size_t class_count(ClassIndex i) const { return class_counts_[i]; }

  /// The image obtained by painting each pixel with its palette colour.
  RgbImage to_rgb() const;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<ClassIndex> indices_;
  std::vector<Rgb> palette_;
  std::vector<std::size_t> class_counts_;
};

enum class Label : std::uint8_t { back = 0, fore = 1 };

constexpr Label opposite(Label l) { return l == Label::fore ? Label::back : Label::fore; }

/// Binary fore/back assignment, one byte per pixel.
class LabelField {
 public:
  LabelField() = default;
  LabelField(std::size_t width, std::size_t height, Label fill = Label::back);
  /// Throws std::invalid_argument on a size mismatch.
  LabelField(std::size_t width, std::size_t height, std::vector<Label> labels);

  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  std::size_t size() const { return labels_.size(); }

  std::span<const Label> labels() const { return labels_; }
  Label operator[](std::size_t k) const { return labels_[k]; }
  void set(std::size_t k, Label l) { labels_[k] = l; }

  std::size_t count(Label l) const;
  /// Globally exchanges fore and back.
  LabelField swapped() const;

  friend bool operator==(const LabelField&, const LabelField&) = default;

 private:
  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<Label> labels_;
};

struct ClassSplit {
  std::size_t fore = 0;
  std::size_t back = 0;

  std::size_t total() const { return fore + back; }
  friend bool operator==(const ClassSplit&, const ClassSplit&) = default;
};

/// Per-class fore/back tallies of a labelling.
struct HistogramCounts {
  std::size_t n = 0;
  std::vector<ClassSplit> per_class;
  std::size_t fore_total = 0;
  std::size_t back_total = 0;

  std::size_t m() const { return per_class.size(); }
  friend bool operator==(const HistogramCounts&, const HistogramCounts&) = default;
};

/// Throws std::invalid_argument when the dimensions differ.
HistogramCounts count_histogram(const QuantizedImage& img, const LabelField& labels);

enum class Connectivity : std::uint8_t { four = 4, eight = 8 };

/// The grid neighbour relation N.
///
/// Edges are enumerated once per unordered pair through the "forward"
/// offsets (right, down, and for eight-connectivity down-right and
/// down-left); every sum over N in the library goes through
/// `for_each_edge` so all modules agree on the same edge set.
struct Adjacency {
  Connectivity kind = Connectivity::four;

  /// Neighbours of pixel `p` in ascending index order. Throws
  /// std::out_of_range if `p >= width * height`.
  std::vector<std::size_t> neighbors(std::size_t width, std::size_t height,
                                     std::size_t p) const;

  std::size_t edge_count(std::size_t width, std::size_t height) const;

  /// Calls `f(p, q)` for every unordered adjacent pair, with p < q.
  template <class F>
  void for_each_edge(std::size_t width, std::size_t height, F&& f) const {
    const bool diag = kind == Connectivity::eight;
    for (std::size_t y = 0; y < height; ++y) {
      const std::size_t row = y * width;
      const bool has_down = y + 1 < height;
      for (std::size_t x = 0; x < width; ++x) {
        const std::size_t p = row + x;
        if (x + 1 < width) f(p, p + 1);
        if (has_down) {
          f(p, p + width);
          if (diag) {
            if (x + 1 < width) f(p, p + width + 1);
            if (x > 0) f(p, p + width - 1);
          }
        }
      }
    }
  }
};

/// Fraction of pixels on which two label fields agree, maximised over a
/// global fore/back exchange of `b`.
double agreement_up_to_swap(const LabelField& a, const LabelField& b);

/// Number of adjacent pairs carrying different labels.
std::size_t cross_label_pairs(const LabelField& labels, const Adjacency& adj);

}  // namespace mapseg
