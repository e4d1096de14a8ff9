#include "mapseg/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mapseg/affinity_operator.hpp"
#include "mapseg/segmenter.hpp"

namespace mapseg {

namespace {

constexpr double kTieTolerance = 1e-9;
constexpr double kIdentityTolerance = 1e-9;

void check_small(const QuantizedImage& img, std::size_t limit, const char* what) {
  if (img.size() > limit) {
    throw std::length_error(std::string(what) + ": " + std::to_string(img.size()) +
                            " pixels exceeds the enumeration limit of " + std::to_string(limit));
  }
}

struct WeightedNeighbor {
  std::size_t pixel;
  double weight;  // S(c(p), c(q))
};

}  // namespace

LabelField labels_from_mask(std::size_t width, std::size_t height, std::uint64_t mask) {
  std::vector<Label> labels(width * height);
  for (std::size_t p = 0; p < labels.size(); ++p) {
    labels[p] = (mask >> p) & 1U ? Label::back : Label::fore;
  }
  return LabelField(width, height, std::move(labels));
}

bool lexicographically_less(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t diff = a ^ b;
  if (diff == 0) return false;
  const int first = std::countr_zero(diff);
  return ((a >> first) & 1U) == 0;
}

EnumerationResult enumerate_minimum(const QuantizedImage& img, const MrfParams& params,
                                    Objective objective, bool keep_table) {
  check_small(img, kMaxEnumerationPixels, "enumerate_minimum");
  validate(params, img);

  const std::size_t n = img.size();
  const std::size_t m = img.palette_size();
  const auto cls = img.indices();

  std::vector<std::vector<WeightedNeighbor>> nbrs(n);
  params.adjacency.for_each_edge(img.width(), img.height(), [&](std::size_t p, std::size_t q) {
    const double s = params.smoothness(cls[p], cls[q]);
    nbrs[p].push_back({q, s});
    nbrs[q].push_back({p, s});
  });

  // Start from all-fore.
  std::vector<std::size_t> fore_in_class(img.class_counts().begin(), img.class_counts().end());
  std::size_t fore = n;
  double cross = 0.0;
  std::uint64_t mask = 0;

  const double dn = static_cast<double>(n);
  auto value = [&]() {
    const std::size_t back = n - fore;
    if (objective == Objective::reduced) {
      double v = -2.5 / dn * static_cast<double>(fore) * static_cast<double>(back);
      for (std::size_t i = 0; i < m; ++i) {
        const double ni = static_cast<double>(img.class_count(static_cast<ClassIndex>(i)));
        const double fi = static_cast<double>(fore_in_class[i]);
        v += 2.5 / ni * fi * (ni - fi);
      }
      return v + params.lambda * cross;
    }
    double v = xlogx(static_cast<double>(fore)) + xlogx(static_cast<double>(back));
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t ni = img.class_count(static_cast<ClassIndex>(i));
      v -= xlogx(static_cast<double>(fore_in_class[i])) +
           xlogx(static_cast<double>(ni - fore_in_class[i]));
    }
    return v + params.lambda * cross;
  };

  EnumerationResult result;
  const std::uint64_t total = std::uint64_t{1} << n;
  if (keep_table) result.table.assign(total, 0.0);

  result.best_value = value();
  result.best_mask = 0;
  if (keep_table) result.table[0] = result.best_value;

  for (std::uint64_t step = 1; step < total; ++step) {
    const auto p = static_cast<std::size_t>(std::countr_zero(step));
    const bool was_back = (mask >> p) & 1U;
    for (const WeightedNeighbor& nb : nbrs[p]) {
      const bool nb_back = (mask >> nb.pixel) & 1U;
      // Flipping p toggles whether the edge crosses.
      cross += (nb_back == was_back) ? nb.weight : -nb.weight;
    }
    mask ^= std::uint64_t{1} << p;
    if (was_back) {
      ++fore;
      ++fore_in_class[cls[p]];
    } else {
      --fore;
      --fore_in_class[cls[p]];
    }

    const double v = value();
    if (keep_table) result.table[mask] = v;
    const double tol = kTieTolerance * std::max(1.0, std::abs(result.best_value));
    const bool better = v < result.best_value - tol;
    const bool tie_won =
        v <= result.best_value + tol && lexicographically_less(mask, result.best_mask);
    if (better || tie_won) {
      result.best_value = v;
      result.best_mask = mask;
    }
  }
  result.best = labels_from_mask(img.width(), img.height(), result.best_mask);
  return result;
}

CutIdentityReport verify_cut_identity(const QuantizedImage& img, const MrfParams& params) {
  check_small(img, kMaxIdentityPixels, "verify_cut_identity");
  const AffinityOperator op(img, params);
  const double sw = op.sum_w();

  CutIdentityReport report;
  const std::uint64_t total = std::uint64_t{1} << img.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const LabelField labels = labels_from_mask(img.width(), img.height(), mask);
    const double objective = reduced_objective(img, labels, params);
    const double cut = op.cut_capacity(labels);
    const std::vector<double> d = indicator_vector(labels);
    const double via_quadratic = 0.25 * (sw - quadratic_form(op, d));
    report.max_objective_vs_cut = std::max(report.max_objective_vs_cut, std::abs(objective - cut));
    report.max_cut_vs_quadratic = std::max(report.max_cut_vs_quadratic, std::abs(cut - via_quadratic));
  }
  report.labelings = static_cast<std::size_t>(total);
  report.passed = report.max_objective_vs_cut < kIdentityTolerance &&
                  report.max_cut_vs_quadratic < kIdentityTolerance;
  return report;
}

RelaxationGap relaxation_gap(const QuantizedImage& img, const MrfParams& params,
                             const LanczosConfig& lanczos) {
  check_small(img, kMaxIdentityPixels, "relaxation_gap");
  RelaxationGap gap;
  const SpectralSolution spectral = solve_spectral(img, params, lanczos);
  gap.spectral_labels = spectral.labels;
  gap.spectral_value = reduced_objective(img, spectral.labels, params);

  const EnumerationResult exact = enumerate_minimum(img, params, Objective::reduced);
  gap.exact_minimum = exact.best_value;
  gap.exact_labels = exact.best;

  const double tol = kTieTolerance * std::max(1.0, std::abs(gap.exact_minimum));
  if (std::abs(gap.spectral_value - gap.exact_minimum) <= tol) {
    gap.ratio = 1.0;
  } else if (gap.exact_minimum == 0.0) {
    gap.ratio = std::numeric_limits<double>::infinity();
  } else {
    gap.ratio = gap.spectral_value / gap.exact_minimum;
  }
  return gap;
}

}  // namespace mapseg
