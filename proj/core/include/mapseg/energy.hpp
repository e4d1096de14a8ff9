#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mapseg/image_model.hpp"

namespace mapseg {

enum class SmoothnessMode : std::uint8_t { constant_one, color_distance };

/// Pairwise colour interaction S(i, j) between palette classes.
class SmoothnessWeights {
 public:
  /// S == 1 for every pair.
  SmoothnessWeights() = default;
  static SmoothnessWeights constant_one() { return {}; }

  /// Explicit m x m row-major table. Throws std::invalid_argument unless it
  /// is square, symmetric and non-negative.
  static SmoothnessWeights from_table(std::size_t m, std::vector<double> table);

  /// S(i, j) = exp(-|c_i - c_j|^2 / (2 sigma^2)) over palette colours.
  static SmoothnessWeights color_distance(std::span<const Rgb> palette, double sigma);

  SmoothnessMode mode() const { return mode_; }
  bool is_constant() const { return mode_ == SmoothnessMode::constant_one; }
  std::size_t table_size() const { return m_; }

  double operator()(ClassIndex i, ClassIndex j) const {
    return mode_ == SmoothnessMode::constant_one ? 1.0 : table_[i * m_ + j];
  }

 private:
  SmoothnessMode mode_ = SmoothnessMode::constant_one;
  std::size_t m_ = 0;
  std::vector<double> table_;
};

/// Parameters of the MRF prior shared by the energy functions, the
/// affinity operator and the segmenter.
struct MrfParams {
  Adjacency adjacency{};
  SmoothnessWeights smoothness{};
  double lambda = 5.0;
};

/// Throws std::invalid_argument unless lambda is finite and positive and a
/// tabulated S covers every class of `img`.
void validate(const MrfParams& params, const QuantizedImage& img);

struct EnergyBreakdown {
  double data_term = 0.0;
  double smoothness_term = 0.0;
  double lambda = 0.0;
  double total = 0.0;
};

/// x ln x with 0 ln 0 = 0.
double xlogx(double x);

/// Histogram data term E_D in its count form
/// (n_f ln n_f + n_b ln n_b) - sum_i (n_fi ln n_fi + n_bi ln n_bi).
double exact_data_term(const HistogramCounts& counts);

/// Sum of S(c(p), c(q)) over unordered adjacent pairs with different labels.
/// Throws std::invalid_argument on a size mismatch.
double smoothness_term(const QuantizedImage& img, const LabelField& labels,
                       const Adjacency& adj, const SmoothnessWeights& s);

/// E = E_D + lambda * E_S.
EnergyBreakdown exact_energy(const QuantizedImage& img, const LabelField& labels,
                             const MrfParams& params);

/// Energy with both data-term entropies replaced by g*, evaluated exactly as
/// written (a single -1/12 for the global term and one per class):
///   (-(5/2n) n_f n_b - 1/12 + n ln n)
///     - sum_i (-(5/2n_i) n_fi n_bi - 1/12 + n_i ln n_i) + lambda E_S
double approx_energy(const QuantizedImage& img, const LabelField& labels,
                     const MrfParams& params);

/// The labelling-dependent part of `approx_energy`:
///   E* = -(5/2n) n_f n_b + sum_i (5/(2 n_i)) n_fi n_bi + lambda E_S
double reduced_objective(const QuantizedImage& img, const LabelField& labels,
                         const MrfParams& params);

/// Same as `reduced_objective` from precomputed counts and smoothness sum.
double reduced_objective(const HistogramCounts& counts, double smoothness_sum, double lambda);

/// approx_energy - reduced_objective; depends on the image only:
///   n ln n - sum_i n_i ln n_i + (m - 1)/12
double approx_energy_offset(const QuantizedImage& img);

// --- Entropy approximation -------------------------------------------------

/// g(x) = x ln x + (1-x) ln(1-x) on (0,1), 0 at the endpoints.
/// Throws std::domain_error outside [0, 1].
double g(double x);

/// g*(x) = -(5/2) x (1-x) - 1/12. Throws std::domain_error outside [0, 1].
double g_star(double x);

/// Delta(x) = g(x) + (5/2) x (1-x), the remainder after the quadratic
/// term of the series of g; 0 at the endpoints by continuity.
/// Throws std::domain_error outside [0, 1].
double delta(double x);

struct ApproximationReport {
  double delta_mean = 0.0;  // integral of Delta over [0,1]
  double delta_mse = 0.0;   // integral of (Delta + 1/12)^2 over [0,1]
  std::size_t evaluations = 0;
};

/// Both integrals by adaptive Simpson quadrature to absolute tolerance `tol`.
ApproximationReport analyze_entropy_approximation(double tol = 1e-8);

}  // namespace mapseg
