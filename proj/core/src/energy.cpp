#include "mapseg/energy.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mapseg/detail/quadrature.hpp"
#include "mapseg/detail/summation.hpp"

namespace mapseg {

namespace {

void check_same_size(const QuantizedImage& img, const LabelField& labels, const char* what) {
  if (img.width() != labels.width() || img.height() != labels.height()) {
    throw std::invalid_argument(std::string(what) + ": image is " +
                                std::to_string(img.width()) + "x" +
                                std::to_string(img.height()) + " but labels are " +
                                std::to_string(labels.width()) + "x" +
                                std::to_string(labels.height()));
  }
}

void check_unit_interval(double x, const char* fn) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(std::string(fn) + ": argument " + std::to_string(x) +
                            " outside [0, 1]");
  }
}

double count_xlogx(std::size_t k) { return xlogx(static_cast<double>(k)); }

void check_table(const QuantizedImage& img, const SmoothnessWeights& s) {
  if (!s.is_constant() && s.table_size() < img.palette_size()) {
    throw std::invalid_argument("smoothness table covers " + std::to_string(s.table_size()) +
                                " classes but the image has " +
                                std::to_string(img.palette_size()));
  }
}

}  // namespace

void validate(const MrfParams& params, const QuantizedImage& img) {
  if (!(params.lambda > 0.0) || !std::isfinite(params.lambda)) {
    throw std::invalid_argument("lambda must be finite and positive, got " +
                                std::to_string(params.lambda));
  }
  check_table(img, params.smoothness);
}

SmoothnessWeights SmoothnessWeights::from_table(std::size_t m, std::vector<double> table) {
  if (table.size() != m * m) {
    throw std::invalid_argument("smoothness table must have m*m = " + std::to_string(m * m) +
                                " entries, got " + std::to_string(table.size()));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double v = table[i * m + j];
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("smoothness weight S(" + std::to_string(i) + "," +
                                    std::to_string(j) + ") must be finite and >= 0");
      }
      if (v != table[j * m + i]) {
        throw std::invalid_argument("smoothness table is not symmetric at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
      }
    }
  }
  SmoothnessWeights s;
  s.mode_ = SmoothnessMode::color_distance;
  s.m_ = m;
  s.table_ = std::move(table);
  return s;
}

SmoothnessWeights SmoothnessWeights::color_distance(std::span<const Rgb> palette, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("color_distance: sigma must be positive");
  const std::size_t m = palette.size();
  std::vector<double> table(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double dr = double(palette[i].r) - palette[j].r;
      const double dg = double(palette[i].g) - palette[j].g;
      const double db = double(palette[i].b) - palette[j].b;
      table[i * m + j] = std::exp(-(dr * dr + dg * dg + db * db) / (2.0 * sigma * sigma));
    }
  }
  return from_table(m, std::move(table));
}

double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double exact_data_term(const HistogramCounts& counts) {
  double per_class = 0.0;
  for (const ClassSplit& s : counts.per_class) {
    per_class += count_xlogx(s.fore) + count_xlogx(s.back);
  }
  return (count_xlogx(counts.fore_total) + count_xlogx(counts.back_total)) - per_class;
}

double smoothness_term(const QuantizedImage& img, const LabelField& labels,
                       const Adjacency& adj, const SmoothnessWeights& s) {
  check_same_size(img, labels, "smoothness_term");
  check_table(img, s);
  const auto lab = labels.labels();
  if (s.is_constant()) {
    return static_cast<double>(cross_label_pairs(labels, adj));
  }
  const auto cls = img.indices();
  const std::size_t w = img.width();
  std::vector<double> row_sums(img.height(), 0.0);
  adj.for_each_edge(w, img.height(), [&](std::size_t p, std::size_t q) {
    if (lab[p] != lab[q]) row_sums[p / w] += s(cls[p], cls[q]);
  });
  return detail::pairwise_sum(row_sums);
}

EnergyBreakdown exact_energy(const QuantizedImage& img, const LabelField& labels,
                             const MrfParams& params) {
  check_same_size(img, labels, "exact_energy");
  validate(params, img);
  EnergyBreakdown e;
  e.data_term = exact_data_term(count_histogram(img, labels));
  e.smoothness_term = smoothness_term(img, labels, params.adjacency, params.smoothness);
  e.lambda = params.lambda;
  e.total = e.data_term + params.lambda * e.smoothness_term;
  return e;
}

double approx_energy(const QuantizedImage& img, const LabelField& labels,
                     const MrfParams& params) {
  check_same_size(img, labels, "approx_energy");
  validate(params, img);
  const HistogramCounts h = count_histogram(img, labels);
  const double n = static_cast<double>(h.n);
  constexpr double kTwelfth = 1.0 / 12.0;

  const double global = -2.5 / n * static_cast<double>(h.fore_total) *
                            static_cast<double>(h.back_total) -
                        kTwelfth + n * std::log(n);
  double per_class = 0.0;
  for (const ClassSplit& s : h.per_class) {
    const double ni = static_cast<double>(s.total());
    per_class += -2.5 / ni * static_cast<double>(s.fore) * static_cast<double>(s.back) -
                 kTwelfth + ni * std::log(ni);
  }
  const double es = smoothness_term(img, labels, params.adjacency, params.smoothness);
  return global - per_class + params.lambda * es;
}

double reduced_objective(const HistogramCounts& counts, double smoothness_sum, double lambda) {
  const double n = static_cast<double>(counts.n);
  double per_class = 0.0;
  for (const ClassSplit& s : counts.per_class) {
    per_class += 2.5 / static_cast<double>(s.total()) * static_cast<double>(s.fore) *
                 static_cast<double>(s.back);
  }
  return -2.5 / n * static_cast<double>(counts.fore_total) *
             static_cast<double>(counts.back_total) +
         per_class + lambda * smoothness_sum;
}

double reduced_objective(const QuantizedImage& img, const LabelField& labels,
                         const MrfParams& params) {
  check_same_size(img, labels, "reduced_objective");
  validate(params, img);
  return reduced_objective(count_histogram(img, labels),
                           smoothness_term(img, labels, params.adjacency, params.smoothness),
                           params.lambda);
}

double approx_energy_offset(const QuantizedImage& img) {
  double per_class = 0.0;
  for (std::size_t ni : img.class_counts()) per_class += count_xlogx(ni);
  const double m = static_cast<double>(img.palette_size());
  return count_xlogx(img.size()) - per_class + (m - 1.0) / 12.0;
}

double g(double x) {
  check_unit_interval(x, "g");
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return x * std::log(x) + (1.0 - x) * std::log1p(-x);
}

double g_star(double x) {
  check_unit_interval(x, "g_star");
  return -2.5 * x * (1.0 - x) - 1.0 / 12.0;
}

double delta(double x) {
  check_unit_interval(x, "delta");
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return g(x) + 2.5 * x * (1.0 - x);
}

ApproximationReport analyze_entropy_approximation(double tol) {
  ApproximationReport r;
  const auto mean = detail::adaptive_simpson([](double x) { return delta(x); }, 0.0, 1.0, tol);
  const auto mse = detail::adaptive_simpson(
      [](double x) {
        const double e = delta(x) + 1.0 / 12.0;
        return e * e;
      },
      0.0, 1.0, tol);
  r.delta_mean = mean.value;
  r.delta_mse = mse.value;
  r.evaluations = mean.evaluations + mse.evaluations;
  return r;
}

}  // namespace mapseg
