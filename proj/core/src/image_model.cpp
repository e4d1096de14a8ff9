#include "mapseg/image_model.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>

namespace mapseg {

namespace {

void check_dims(std::size_t width, std::size_t height) {
  if (width == 0 || height == 0) {
    throw std::invalid_argument("image dimensions must be positive, got " +
                                std::to_string(width) + "x" + std::to_string(height));
  }
}

}  // namespace

RgbImage::RgbImage(std::size_t width, std::size_t height, std::vector<Rgb> pixels)
    : width_(width), height_(height), pixels_(std::move(pixels)) {
  check_dims(width, height);
  if (pixels_.size() != width * height) {
    throw std::invalid_argument("pixel count " + std::to_string(pixels_.size()) +
                                " does not match " + std::to_string(width) + "x" +
                                std::to_string(height));
  }
}

RgbImage::RgbImage(std::size_t width, std::size_t height, Rgb fill)
    : RgbImage(width, height, std::vector<Rgb>(width * height, fill)) {}

QuantizedImage QuantizedImage::from_indices(std::size_t width, std::size_t height,
                                            std::vector<ClassIndex> indices,
                                            std::vector<Rgb> palette) {
  check_dims(width, height);
  if (indices.size() != width * height) {
    throw std::invalid_argument("index count " + std::to_string(indices.size()) +
                                " does not match " + std::to_string(width) + "x" +
                                std::to_string(height));
  }

  ClassIndex max_index = 0;
  for (ClassIndex c : indices) max_index = std::max(max_index, c);
  if (!palette.empty() && palette.size() <= max_index) {
    throw std::invalid_argument("class index " + std::to_string(max_index) +
                                " has no palette entry (palette size " +
                                std::to_string(palette.size()) + ")");
  }

  std::vector<std::size_t> raw_counts(static_cast<std::size_t>(max_index) + 1, 0);
  for (ClassIndex c : indices) ++raw_counts[c];

  // Compact: surviving classes keep their relative order.
  constexpr ClassIndex kUnused = std::numeric_limits<ClassIndex>::max();
  std::vector<ClassIndex> remap(raw_counts.size(), kUnused);
  QuantizedImage out;
  for (std::size_t i = 0; i < raw_counts.size(); ++i) {
    if (raw_counts[i] == 0) continue;
    remap[i] = static_cast<ClassIndex>(out.class_counts_.size());
    out.class_counts_.push_back(raw_counts[i]);
    out.palette_.push_back(palette.empty() ? Rgb{} : palette[i]);
  }
  for (ClassIndex& c : indices) c = remap[c];

  out.width_ = width;
  out.height_ = height;
  out.indices_ = std::move(indices);
  return out;
}

RgbImage QuantizedImage::to_rgb() const {
  std::vector<Rgb> px(indices_.size());
  for (std::size_t k = 0; k < px.size(); ++k) px[k] = palette_[indices_[k]];
  return RgbImage(width_, height_, std::move(px));
}

LabelField::LabelField(std::size_t width, std::size_t height, Label fill)
    : LabelField(width, height, std::vector<Label>(width * height, fill)) {}

LabelField::LabelField(std::size_t width, std::size_t height, std::vector<Label> labels)
    : width_(width), height_(height), labels_(std::move(labels)) {
  check_dims(width, height);
  if (labels_.size() != width * height) {
    throw std::invalid_argument("label count " + std::to_string(labels_.size()) +
                                " does not match " + std::to_string(width) + "x" +
                                std::to_string(height));
  }
}

std::size_t LabelField::count(Label l) const {
  return static_cast<std::size_t>(std::count(labels_.begin(), labels_.end(), l));
}

LabelField LabelField::swapped() const {
  LabelField out = *this;
  for (Label& l : out.labels_) l = opposite(l);
  return out;
}

HistogramCounts count_histogram(const QuantizedImage& img, const LabelField& labels) {
  if (img.width() != labels.width() || img.height() != labels.height()) {
    throw std::invalid_argument("count_histogram: image and labels differ in size");
  }
  HistogramCounts h;
  h.n = img.size();
  h.per_class.assign(img.palette_size(), ClassSplit{});
  const auto idx = img.indices();
  const auto lab = labels.labels();
  for (std::size_t k = 0; k < idx.size(); ++k) {
    if (lab[k] == Label::fore) {
      ++h.per_class[idx[k]].fore;
    } else {
      ++h.per_class[idx[k]].back;
    }
  }
  for (const ClassSplit& s : h.per_class) {
    h.fore_total += s.fore;
    h.back_total += s.back;
  }
  return h;
}

std::vector<std::size_t> Adjacency::neighbors(std::size_t width, std::size_t height,
                                              std::size_t p) const {
  if (p >= width * height) {
    throw std::out_of_range("pixel index " + std::to_string(p) + " outside " +
                            std::to_string(width) + "x" + std::to_string(height) + " grid");
  }
  const std::size_t x = p % width;
  const std::size_t y = p / width;
  const bool diag = kind == Connectivity::eight;
  const bool left = x > 0, right = x + 1 < width, up = y > 0, down = y + 1 < height;

  std::vector<std::size_t> out;
  out.reserve(diag ? 8 : 4);
  if (up) {
    if (diag && left) out.push_back(p - width - 1);
    out.push_back(p - width);
    if (diag && right) out.push_back(p - width + 1);
  }
  if (left) out.push_back(p - 1);
  if (right) out.push_back(p + 1);
  if (down) {
    if (diag && left) out.push_back(p + width - 1);
    out.push_back(p + width);
    if (diag && right) out.push_back(p + width + 1);
  }
  return out;
}

std::size_t Adjacency::edge_count(std::size_t width, std::size_t height) const {
  if (width == 0 || height == 0) return 0;
  std::size_t e = (width - 1) * height + width * (height - 1);
  if (kind == Connectivity::eight) e += 2 * (width - 1) * (height - 1);
  return e;
}

double agreement_up_to_swap(const LabelField& a, const LabelField& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("agreement_up_to_swap: size mismatch");
  }
  std::size_t same = 0;
  for (std::size_t k = 0; k < a.size(); ++k) same += a[k] == b[k] ? 1 : 0;
  const std::size_t best = std::max(same, a.size() - same);
  return static_cast<double>(best) / static_cast<double>(a.size());
}

std::size_t cross_label_pairs(const LabelField& labels, const Adjacency& adj) {
  std::size_t cross = 0;
  const auto lab = labels.labels();
  adj.for_each_edge(labels.width(), labels.height(), [&](std::size_t p, std::size_t q) {
    cross += lab[p] != lab[q] ? 1 : 0;
  });
  return cross;
}

}  // namespace mapseg
