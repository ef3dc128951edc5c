#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "qfa/algebra.hpp"
#include "qfa/fusion_ring.hpp"

namespace qfa {

enum class InequalityId { QSP, QHY, QY, QUP1, QUP2, Plancherel };

std::string_view inequality_name(InequalityId id);
/// Accepts the names returned by inequality_name; ValueError otherwise.
InequalityId parse_inequality(std::string_view name);
inline constexpr std::array<InequalityId, 6> kAllInequalities = {
    InequalityId::Plancherel, InequalityId::QSP, InequalityId::QHY,
    InequalityId::QY, InequalityId::QUP1, InequalityId::QUP2};

/// Exponents for the parameter families. `p_values` drive QHY (p in [1,2], q its conjugate).
/// QY triples come from pairs over p_values and their conjugates with r solved from
/// 1/p + 1/q = 1 + 1/r, unless `young` is set explicitly.
struct ExponentGrid {
  std::vector<double> p_values = {1.0, 1.1, 1.25, 1.5, 1.75, 2.0};
  std::vector<std::array<double, 3>> young;

  std::vector<std::array<double, 2>> hausdorff_young_pairs() const;
  std::vector<std::array<double, 3>> young_triples() const;
};

struct CheckReport {
  InequalityId id = InequalityId::Plancherel;
  std::size_t samples = 0;
  /// RHS − LHS (or the positivity margin) minimized over samples and exponents. NaN when samples = 0.
  double worst_margin = 0.0;
  std::size_t worst_sample = 0;
  /// {"elements": [...], "exponents": [...]} for the worst sample.
  std::optional<std::string> witness;
  std::uint64_t seed = 0;
};

/// Margins are raw; judging them is the caller's business.
/// DomainError for illegal exponents; NumericalError from sample i carries index i.
CheckReport run_check(const FusionRing& ring, InequalityId id, std::size_t samples, std::uint64_t seed,
                      const ExponentGrid& grid = {});

/// Recomputes the margin recorded in a CheckReport witness.
double witness_margin(const FusionRing& ring, InequalityId id, std::string_view witness);

/// QUP-1 functional H_A(|x|²) + H_B(|x̂|²) + 2‖x‖₂² log ‖x‖₂².
double qup1_value(const AlgebraElement& x);
/// S_A(x)·S_B(x̂).
double qup2_product(const AlgebraElement& x);
/// min over p of ‖x‖_{A,p} − ‖x̂‖_{B,q}.
double qhy_margin(const AlgebraElement& x, const std::vector<double>& p_values);

struct ExtremizerRecord {
  std::string candidate;
  double qup1 = 0.0;
  double qup2 = 0.0;
  double qhy = 0.0;
  bool qup1_equality = false;
  bool qup2_equality = false;
  bool qhy_equality = false;
};
inline constexpr double kEqualityTolerance = 1e-9;

/// Candidates: x0, the A-side unit, and each minimal projection d_j x_j.
std::vector<ExtremizerRecord> extremizer_probe(const FusionRing& ring, const ExponentGrid& grid = {});

/// Positive A-side element: coefficients d_j g_j² with Gaussian g, unit 2-norm.
AlgebraElement sample_positive(const FusionAlgebra& algebra, std::mt19937_64& rng);
/// Complex A-side element with spectral values Gaussian and random support, unit 2-norm.
AlgebraElement sample_general(const FusionAlgebra& algebra, std::mt19937_64& rng);

}  // namespace qfa
