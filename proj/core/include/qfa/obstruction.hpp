#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "qfa/algebra.hpp"
#include "qfa/fusion_ring.hpp"

namespace qfa {

enum class ObstructionStatus { Obstructed, NoObstructionFound, Certified, Inconclusive };

std::string_view status_name(ObstructionStatus status);

struct ObstructionVerdict {
  ObstructionStatus status = ObstructionStatus::Inconclusive;
  /// Commutative path: minimizing unordered column triple.
  std::optional<std::array<std::size_t, 3>> witness_columns;
  /// Sampling path: {"x": element, "y": element} whose convolution is not positive.
  std::optional<std::string> witness_pair;
  /// NaN on the sampling path.
  double min_triple_sum = 0.0;
  /// Smallest positivity margin of a sampled convolution. NaN when nothing was sampled.
  double min_positivity_margin = 0.0;
  double margin_threshold = 0.0;
  std::size_t evaluations = 0;
  bool exhaustive = false;
  /// Smallest diagonal sum (j, j, j), recorded apart from the full criterion.
  std::optional<double> min_diagonal_sum;
  std::optional<std::size_t> min_diagonal_column;
  std::string diagnostic;
};

/// Σ_i c[i][j1] c[i][j2] c[i][j3] / d_i, real part. NumericalError if the column set is closed
/// under conjugation and the imaginary part exceeds 1e-9. ShapeError for columns out of range.
double triple_sum(const CharacterTable& table, std::size_t j1, std::size_t j2, std::size_t j3);

inline constexpr double kRelativeMarginThreshold = 1e-6;
/// Sampled elements are scaled to operator norm 1, so this threshold is absolute.
inline constexpr double kSamplingThreshold = 1e-9;

struct ScanOptions {
  CharacterTableOptions table;
  std::size_t fallback_samples = 1000;
  std::uint64_t seed = 0;
};

/// Exhaustive triple scan when the ring is commutative; dual_schur_sample otherwise.
ObstructionVerdict scan(const FusionRing& ring, const ScanOptions& options = {});

/// Random positive B-side pairs (half a†a, half spectral projections of random
/// self-adjoint elements plus small noise) tested for positivity of their convolution.
ObstructionVerdict dual_schur_sample(const FusionRing& ring, std::size_t samples, std::uint64_t seed);

/// Positivity margin of x ∗ y after scaling both to operator norm 1.
double schur_margin(const AlgebraElement& x, const AlgebraElement& y);

/// B-side element Σ_i conj(c[i][col]) x_i: a positive multiple of the minimal idempotent of `col`.
AlgebraElement lift_column(const std::shared_ptr<const FusionAlgebra>& algebra, const CharacterTable& table,
                           std::size_t col);

}  // namespace qfa
