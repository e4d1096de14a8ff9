#include "mapseg/affinity_operator.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "mapseg/detail/summation.hpp"

namespace mapseg {

namespace {

void check_length(std::size_t got, std::size_t want, const char* what) {
  if (got != want) {
    throw std::invalid_argument(std::string(what) + ": vector length " + std::to_string(got) +
                                " does not match operator size " + std::to_string(want));
  }
}

}  // namespace

AffinityOperator::AffinityOperator(const QuantizedImage& img, MrfParams params)
    : width_(img.width()),
      height_(img.height()),
      class_of_(img.indices().begin(), img.indices().end()),
      class_counts_(img.class_counts().begin(), img.class_counts().end()),
      params_(std::move(params)) {
  validate(params_, img);
  global_coef_ = 2.5 / static_cast<double>(class_of_.size());
  class_coef_.reserve(class_counts_.size());
  for (std::size_t ni : class_counts_) class_coef_.push_back(2.5 / static_cast<double>(ni));
}

void AffinityOperator::apply(std::span<const double> v, std::span<double> out,
                             Workspace& ws) const {
  const std::size_t n = size();
  check_length(v.size(), n, "AffinityOperator::apply");
  check_length(out.size(), n, "AffinityOperator::apply");
  const std::size_t m = class_count();

  // phi and theta_i in one pass.
  ws.theta.assign(m, 0.0);
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    total += v[k];
    ws.theta[class_of_[k]] += v[k];
  }
  const double phi = -global_coef_ * total;
  ws.base.resize(m);
  for (std::size_t i = 0; i < m; ++i) ws.base[i] = phi + class_coef_[i] * ws.theta[i];

  // Rank-one and per-class parts, with the diagonal removed.
  for (std::size_t k = 0; k < n; ++k) {
    const ClassIndex c = class_of_[k];
    out[k] = ws.base[c] + (global_coef_ - class_coef_[c]) * v[k];
  }

  // lambda * mu_k over the grid edges.
  const double lambda = params_.lambda;
  if (params_.smoothness.is_constant()) {
    params_.adjacency.for_each_edge(width_, height_, [&](std::size_t p, std::size_t q) {
      out[p] += lambda * v[q];
      out[q] += lambda * v[p];
    });
  } else {
    const SmoothnessWeights& s = params_.smoothness;
    params_.adjacency.for_each_edge(width_, height_, [&](std::size_t p, std::size_t q) {
      const double w = lambda * s(class_of_[p], class_of_[q]);
      out[p] += w * v[q];
      out[q] += w * v[p];
    });
  }
}

bool AffinityOperator::adjacent(std::size_t p, std::size_t q) const {
  const long px = static_cast<long>(p % width_), py = static_cast<long>(p / width_);
  const long qx = static_cast<long>(q % width_), qy = static_cast<long>(q / width_);
  const long dx = std::labs(px - qx), dy = std::labs(py - qy);
  if (params_.adjacency.kind == Connectivity::four) return dx + dy == 1;
  return dx <= 1 && dy <= 1 && dx + dy > 0;
}

double AffinityOperator::weight(std::size_t p, std::size_t q) const {
  if (p >= size() || q >= size()) {
    throw std::out_of_range("AffinityOperator::weight: index out of range");
  }
  if (p == q) return 0.0;
  double w = -global_coef_;
  if (class_of_[p] == class_of_[q]) w += class_coef_[class_of_[p]];
  if (adjacent(p, q)) w += params_.lambda * params_.smoothness(class_of_[p], class_of_[q]);
  return w;
}

double AffinityOperator::cut_capacity(const LabelField& labels) const {
  if (labels.width() != width_ || labels.height() != height_) {
    throw std::invalid_argument("cut_capacity: label field size does not match the operator");
  }
  const auto lab = labels.labels();
  std::vector<std::size_t> fore_in_class(class_count(), 0);
  std::size_t fore = 0;
  for (std::size_t k = 0; k < lab.size(); ++k) {
    if (lab[k] == Label::fore) {
      ++fore;
      ++fore_in_class[class_of_[k]];
    }
  }
  const std::size_t back = size() - fore;

  // Every fore/back pair carries w1; same-class pairs add w2.
  double cut = -global_coef_ * static_cast<double>(fore) * static_cast<double>(back);
  double same_class = 0.0;
  for (std::size_t i = 0; i < class_count(); ++i) {
    const double fi = static_cast<double>(fore_in_class[i]);
    const double bi = static_cast<double>(class_counts_[i] - fore_in_class[i]);
    same_class += class_coef_[i] * fi * bi;
  }
  cut += same_class;

  std::vector<double> row_sums(height_, 0.0);
  params_.adjacency.for_each_edge(width_, height_, [&](std::size_t p, std::size_t q) {
    if (lab[p] != lab[q]) row_sums[p / width_] += params_.smoothness(class_of_[p], class_of_[q]);
  });
  return cut + params_.lambda * detail::pairwise_sum(row_sums);
}

double AffinityOperator::sum_w() const {
  const double n = static_cast<double>(size());
  double total = -global_coef_ * (n * n - n);
  for (std::size_t i = 0; i < class_count(); ++i) {
    const double ni = static_cast<double>(class_counts_[i]);
    total += class_coef_[i] * (ni * ni - ni);
  }
  std::vector<double> row_sums(height_, 0.0);
  params_.adjacency.for_each_edge(width_, height_, [&](std::size_t p, std::size_t q) {
    row_sums[p / width_] += params_.smoothness(class_of_[p], class_of_[q]);
  });
  return total + 2.0 * params_.lambda * detail::pairwise_sum(row_sums);
}

std::vector<double> matvec(const AffinityOperator& op, std::span<const double> v) {
  std::vector<double> out(op.size());
  AffinityOperator::Workspace ws;
  op.apply(v, out, ws);
  return out;
}

DenseMatrix dense_w(const AffinityOperator& op) {
  const std::size_t n = op.size();
  if (n > kMaxDensePixels) {
    throw std::length_error("dense_w: " + std::to_string(n) + " pixels exceeds the limit of " +
                            std::to_string(kMaxDensePixels));
  }
  DenseMatrix w{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) w(p, q) = op.weight(p, q);
  }
  return w;
}

double cut_capacity(const AffinityOperator& op, const LabelField& labels) {
  return op.cut_capacity(labels);
}

double quadratic_form(const AffinityOperator& op, std::span<const double> d) {
  check_length(d.size(), op.size(), "quadratic_form");
  const std::vector<double> wd = matvec(op, d);
  double s = 0.0;
  for (std::size_t k = 0; k < d.size(); ++k) s += d[k] * wd[k];
  return s;
}

double sum_w(const AffinityOperator& op) { return op.sum_w(); }

std::vector<double> indicator_vector(const LabelField& labels) {
  std::vector<double> d(labels.size());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = labels[k] == Label::fore ? 1.0 : -1.0;
  return d;
}

}  // namespace mapseg
