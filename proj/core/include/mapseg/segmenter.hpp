#pragma once

#include <cstddef>
#include <span>

#include "mapseg/affinity_operator.hpp"
#include "mapseg/eigensolver.hpp"
#include "mapseg/energy.hpp"
#include "mapseg/image_model.hpp"
#include "mapseg/quantizer.hpp"

namespace mapseg {

struct SegmentationConfig {
  std::size_t colors = kDefaultColorCount;
  double lambda = 5.0;
  Connectivity connectivity = Connectivity::four;
  SmoothnessMode smoothness = SmoothnessMode::constant_one;
  /// Only used with SmoothnessMode::color_distance.
  double color_sigma = 32.0;
  LanczosConfig lanczos{};
};

/// Throws std::invalid_argument when lambda is not positive, colors is
/// outside [1, 256], or the solver settings are invalid.
void validate(const SegmentationConfig& cfg);

struct StageTimings {
  double quantize_ms = 0.0;
  double operator_ms = 0.0;
  double eigensolve_ms = 0.0;
  double threshold_ms = 0.0;

  double total_ms() const { return quantize_ms + operator_ms + eigensolve_ms + threshold_ms; }
};

struct SegmentationReport {
  QuantizedImage quantized;
  LabelField labels;
  EigenResult eigen;
  /// Exact E at `labels`.
  EnergyBreakdown energy;
  /// E* at `labels`.
  double reduced_objective = 0.0;
  StageTimings timings;
};

/// fore where x[k] >= 0, back where x[k] < 0.
LabelField labels_from_vector(std::size_t width, std::size_t height, std::span<const double> x);

struct SpectralSolution {
  LabelField labels;
  EigenResult eigen;
  double operator_ms = 0.0;
  double eigensolve_ms = 0.0;
  double threshold_ms = 0.0;
};

/// Steps two and three of the pipeline for explicit MRF parameters.
SpectralSolution solve_spectral(const QuantizedImage& img, const MrfParams& params,
                                const LanczosConfig& lanczos = {});

/// Builds the MRF parameters a configuration implies for an image.
MrfParams make_params(const SegmentationConfig& cfg, const QuantizedImage& img);

/// Quantise, build W, take its top eigenvector, threshold at zero.
///
/// A solver that runs out of iterations still yields labels; check
/// `report.eigen.converged`.
SegmentationReport segment(const RgbImage& img, const SegmentationConfig& cfg = {});

/// The same pipeline from an already-quantised image (`cfg.colors` unused).
SegmentationReport segment(const QuantizedImage& img, const SegmentationConfig& cfg = {});

}  // namespace mapseg
