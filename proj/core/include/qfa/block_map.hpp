#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfa/group_model.hpp"

namespace qfa {

/// Which term gets which diagram: T₁ carries λ/‖f‖₁, T₂ carries (1−λ)/‖f‖_∞.
enum class TermReading {
  /// T₁ = (f⋆f*)·(f*⋆f), T₂ = (f·f*)⋆(f*·f).
  ProductOfConvolutionsFirst,
  /// T₁ = (f·f*)⋆(f*·f), T₂ = (f⋆f*)·(f*⋆f).
  ConvolutionOfProductsFirst,
};

/// A reading plus the δ-powers absorbed into the convolution and the prefactor:
/// x⋆y = δ^{−convolution_power}·(classical convolution), prefactor δ^{prefactor_power}/‖f‖₂².
struct BlockDecoding {
  TermReading reading = TermReading::ProductOfConvolutionsFirst;
  int convolution_power = 0;
  int prefactor_power = 2;
  /// True when no candidate with the printed prefactor δ² fixes subgroup indicators.
  bool widened = false;
  std::string describe() const;
};

inline constexpr int kPrintedPrefactorPower = 2;
inline constexpr double kFixedPointTolerance = 1e-10;

/// Finds the first decoding, printed prefactor first, under which every subgroup indicator of every
/// group in `groups` is fixed for λ ∈ {0, 0.25, 0.5, 0.75, 1}. NumericalError if none survives.
BlockDecoding calibrate_decoding(const std::vector<FiniteGroup>& groups);
/// calibrate_decoding over Z/12 and S3, computed once.
const BlockDecoding& calibrated_decoding();
/// Number of candidates that passed in the last search (1 means the decoding is unique).
std::size_t surviving_decodings(const std::vector<FiniteGroup>& groups);

/// B_λ(f). DomainError for f = 0 or λ outside [0, 1].
Eigen::VectorXcd block_step(const GroupModel& model, const Eigen::VectorXcd& f, double lambda,
                            const BlockDecoding& decoding);

/// H_A(|f|²) + H_B(|F f|²) of f normalized in 2-norm.
double hirschman_beckner(const GroupModel& model, const Eigen::VectorXcd& f);

struct Bishift {
  std::size_t subgroup = 0;   // index into FiniteGroup::subgroups()
  std::size_t shift = 0;      // coset representative
  std::size_t character = 0;  // index into FiniteGroup::linear_characters()
  Eigen::VectorXcd values;
};
/// Every distinct χ·1_{gH}.
std::vector<Bishift> bishift_catalog(const GroupModel& model);

enum class LimitKind { Zero, Biprojection, Unclassified };
std::string_view limit_name(LimitKind kind);

struct Classification {
  LimitKind kind = LimitKind::Unclassified;
  Bishift match;
  cplx scale = 0.0;
  /// ‖f − scale·match‖₂ / ‖f‖₂ for the best candidate.
  double distance = 0.0;
};
inline constexpr double kClassificationTolerance = 1e-6;
Classification classify(const GroupModel& model, const Eigen::VectorXcd& f,
                        const std::vector<Bishift>& catalog);

struct TrajectoryStep {
  std::uint64_t checksum = 0;
  double diff_norm = 0.0;  // ‖f_{k+1} − f_k‖₂, 0 for the start
  double entropy = 0.0;
};

struct Trajectory {
  double lambda = 0.0;
  std::vector<Eigen::VectorXcd> iterates;
  std::vector<TrajectoryStep> steps;
  bool converged = false;
  /// First index k from which three consecutive differences stay below 1e-8·‖f_k‖₂.
  std::size_t converged_at = 0;
  Classification limit;
};

inline constexpr double kConvergenceTolerance = 1e-8;
inline constexpr int kQuietSteps = 3;

Trajectory iterate(const GroupModel& model, const Eigen::VectorXcd& f0, double lambda, std::size_t max_steps,
                   const BlockDecoding& decoding);

struct EntropyViolation {
  std::size_t step = 0;
  double increase = 0.0;
};
inline constexpr double kEntropyTolerance = 1e-9;
std::vector<EntropyViolation> entropy_monotonicity_report(const Trajectory& trajectory);

struct StabilityReport {
  double epsilon = 0.0;
  std::size_t samples = 0;
  /// Samples meeting both closeness conditions.
  std::size_t admissible = 0;
  std::vector<double> distances;  // per admissible sample, to the nearest bishift
  double min_distance = 0.0;
  double median_distance = 0.0;
  double max_distance = 0.0;
};
/// min over the catalog of ‖x − b‖₂.
double nearest_bishift_distance(const std::vector<Bishift>& catalog, const Eigen::VectorXcd& x);
StabilityReport stability_probe(const GroupModel& model, double epsilon, std::size_t samples, std::uint64_t seed);

/// FNV-1a over the raw doubles of a vector.
std::uint64_t vector_checksum(const Eigen::VectorXcd& v);

}  // namespace qfa
