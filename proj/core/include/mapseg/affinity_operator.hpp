#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mapseg/energy.hpp"
#include "mapseg/image_model.hpp"

namespace mapseg {

/// Row-major square matrix, used only for small dense oracles.
struct DenseMatrix {
  std::size_t n = 0;
  std::vector<double> data;

  double operator()(std::size_t i, std::size_t j) const { return data[i * n + j]; }
  double& operator()(std::size_t i, std::size_t j) { return data[i * n + j]; }
};

/// Largest pixel count `dense_w` will materialise.
inline constexpr std::size_t kMaxDensePixels = 4096;

/// Matrix-free form of the complete-graph weight matrix W over pixels,
///
///   w(p, q) = -5/(2n)
///           + 5/(2 n_i)           if c(p) = c(q) = i
///           + lambda S(c(p),c(q)) if p and q are adjacent
///
/// for p != q, and w(p, p) = 0. W is never stored: a product W v costs one
/// pass over the pixels for the global and per-class sums plus one pass
/// over the grid edges.
class AffinityOperator {
 public:
  /// Scratch space for `apply`; reuse it across calls.
  struct Workspace {
    std::vector<double> theta;
    std::vector<double> base;
  };

  /// Throws std::invalid_argument if `params` fails `validate`.
  AffinityOperator(const QuantizedImage& img, MrfParams params);

  std::size_t size() const { return class_of_.size(); }
  std::size_t class_count() const { return class_coef_.size(); }
  std::size_t width() const { return width_; }
  std::size_t height() const { return height_; }
  const MrfParams& params() const { return params_; }

  /// out = W v. Both spans must have length `size()`; `out` must not alias
  /// `v`. Throws std::invalid_argument on a length mismatch.
  void apply(std::span<const double> v, std::span<double> out, Workspace& ws) const;

  /// Single entry w(p, q), evaluated directly from the weight definition.
  double weight(std::size_t p, std::size_t q) const;

  /// Sum of w(p, q) over unordered pairs split by the labelling, from
  /// crossing-pair counts per weight component.
  double cut_capacity(const LabelField& labels) const;

  /// S_W, the sum of all n^2 entries of W.
  double sum_w() const;

 private:
  bool adjacent(std::size_t p, std::size_t q) const;

  std::size_t width_ = 0;
  std::size_t height_ = 0;
  std::vector<ClassIndex> class_of_;
  std::vector<std::size_t> class_counts_;
  MrfParams params_;
  double global_coef_ = 0.0;         // 5/(2n)
  std::vector<double> class_coef_;   // 5/(2 n_i)
};

/// r = W v.
std::vector<double> matvec(const AffinityOperator& op, std::span<const double> v);

/// Entrywise W. Throws std::length_error above kMaxDensePixels.
DenseMatrix dense_w(const AffinityOperator& op);

double cut_capacity(const AffinityOperator& op, const LabelField& labels);

/// D^T W D through one product and one dot product.
double quadratic_form(const AffinityOperator& op, std::span<const double> d);

double sum_w(const AffinityOperator& op);

/// +1 for fore, -1 for back.
std::vector<double> indicator_vector(const LabelField& labels);

}  // namespace mapseg
