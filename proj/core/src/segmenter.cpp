#include "mapseg/segmenter.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mapseg {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

SegmentationReport run_pipeline(QuantizedImage quantized, const SegmentationConfig& cfg,
                                double quantize_ms) {
  SegmentationReport report;
  report.timings.quantize_ms = quantize_ms;

  const MrfParams params = make_params(cfg, quantized);
  SpectralSolution sol = solve_spectral(quantized, params, cfg.lanczos);
  report.eigen = std::move(sol.eigen);
  report.labels = std::move(sol.labels);
  report.timings.operator_ms = sol.operator_ms;
  report.timings.eigensolve_ms = sol.eigensolve_ms;
  report.timings.threshold_ms = sol.threshold_ms;

  report.energy = exact_energy(quantized, report.labels, params);
  report.reduced_objective = reduced_objective(quantized, report.labels, params);
  report.quantized = std::move(quantized);
  return report;
}

}  // namespace

void validate(const SegmentationConfig& cfg) {
  if (!(cfg.lambda > 0.0) || !std::isfinite(cfg.lambda)) {
    throw std::invalid_argument("lambda must be finite and positive, got " +
                                std::to_string(cfg.lambda));
  }
  if (cfg.colors < 1 || cfg.colors > kMaxColorCount) {
    throw std::invalid_argument("colors must be in [1, 256], got " + std::to_string(cfg.colors));
  }
  if (cfg.smoothness == SmoothnessMode::color_distance && !(cfg.color_sigma > 0.0)) {
    throw std::invalid_argument("color_sigma must be positive");
  }
  validate(cfg.lanczos);
}

LabelField labels_from_vector(std::size_t width, std::size_t height, std::span<const double> x) {
  if (x.size() != width * height) {
    throw std::invalid_argument("labels_from_vector: vector length " + std::to_string(x.size()) +
                                " does not match " + std::to_string(width) + "x" +
                                std::to_string(height));
  }
  std::vector<Label> labels(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) labels[k] = x[k] >= 0.0 ? Label::fore : Label::back;
  return LabelField(width, height, std::move(labels));
}

SpectralSolution solve_spectral(const QuantizedImage& img, const MrfParams& params,
                                const LanczosConfig& lanczos) {
  SpectralSolution sol;
  auto t0 = Clock::now();
  const AffinityOperator op(img, params);
  sol.operator_ms = ms_since(t0);

  t0 = Clock::now();
  AffinityOperator::Workspace ws;
  sol.eigen = largest_eigenpair(
      op.size(), [&](std::span<const double> x, std::span<double> y) { op.apply(x, y, ws); },
      lanczos);
  sol.eigensolve_ms = ms_since(t0);

  t0 = Clock::now();
  sol.labels = labels_from_vector(img.width(), img.height(), sol.eigen.eigenvector);
  sol.threshold_ms = ms_since(t0);
  return sol;
}

MrfParams make_params(const SegmentationConfig& cfg, const QuantizedImage& img) {
  MrfParams params;
  params.adjacency.kind = cfg.connectivity;
  params.lambda = cfg.lambda;
  if (cfg.smoothness == SmoothnessMode::color_distance) {
    params.smoothness = SmoothnessWeights::color_distance(img.palette(), cfg.color_sigma);
  }
  return params;
}

SegmentationReport segment(const RgbImage& img, const SegmentationConfig& cfg) {
  validate(cfg);
  const auto t0 = Clock::now();
  QuantizedImage q = quantize(img, cfg.colors);
  return run_pipeline(std::move(q), cfg, ms_since(t0));
}

SegmentationReport segment(const QuantizedImage& img, const SegmentationConfig& cfg) {
  validate(cfg);
  return run_pipeline(img, cfg, 0.0);
}

}  // namespace mapseg
