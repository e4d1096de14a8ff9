#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mapseg/eigensolver.hpp"
#include "mapseg/energy.hpp"
#include "mapseg/image_model.hpp"

namespace mapseg {

// Exhaustive ground truth for tiny images. Labellings are encoded as bit
// masks over pixel indices with bit p set when pixel p is back, so mask 0
// is all-fore.

inline constexpr std::size_t kMaxEnumerationPixels = 20;
inline constexpr std::size_t kMaxIdentityPixels = 16;

enum class Objective : std::uint8_t { exact_energy, reduced };

LabelField labels_from_mask(std::size_t width, std::size_t height, std::uint64_t mask);

/// True if `a` precedes `b` lexicographically in pixel order with
/// fore < back.
bool lexicographically_less(std::uint64_t a, std::uint64_t b);

struct EnumerationResult {
  LabelField best;
  std::uint64_t best_mask = 0;
  double best_value = 0.0;
  /// Objective value per mask; filled only when requested.
  std::vector<double> table;
};

/// Global minimum over all 2^n labellings, visited in Gray-code order with
/// incremental count and edge updates. Values within 1e-9 (relative to
/// max(1, |value|)) are ties, broken towards the lexicographically smallest
/// labelling. Throws std::length_error when n > kMaxEnumerationPixels.
EnumerationResult enumerate_minimum(const QuantizedImage& img, const MrfParams& params,
                                    Objective objective, bool keep_table = false);

struct CutIdentityReport {
  /// max |E*(L) - cut(L)| over every labelling.
  double max_objective_vs_cut = 0.0;
  /// max |cut(L) - (S_W - D^T W D)/4| over every labelling.
  double max_cut_vs_quadratic = 0.0;
  std::size_t labelings = 0;
  bool passed = false;
};

/// Checks E* = cut capacity = (S_W - D^T W D)/4 on every labelling, passing
/// when both deviations stay below 1e-9. Throws std::length_error when
/// n > kMaxIdentityPixels.
CutIdentityReport verify_cut_identity(const QuantizedImage& img, const MrfParams& params);

struct RelaxationGap {
  double spectral_value = 0.0;  // E* of the thresholded eigenvector
  double exact_minimum = 0.0;   // min E* by enumeration
  /// spectral_value / exact_minimum; 1 when the two agree (including both
  /// zero), +inf when only the minimum is zero.
  double ratio = 1.0;
  LabelField spectral_labels;
  LabelField exact_labels;
};

/// Runs the spectral pipeline and the exhaustive minimum of E* on the same
/// instance. Throws std::length_error when n > kMaxIdentityPixels.
RelaxationGap relaxation_gap(const QuantizedImage& img, const MrfParams& params,
                             const LanczosConfig& lanczos = {});

}  // namespace mapseg
