#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qfa/spectral.hpp"

namespace qfa {

/// A based ring with nonnegative integer structure constants N[j][k][s] = N_{j,k}^s,
/// unit at index 0 and a duality involution `star`.
///
/// Construction only checks shape. Use validate() for the ring axioms.
class FusionRing {
 public:
  /// `structure` is the flattened tensor, index (j*m + k)*m + s.
  FusionRing(std::size_t rank, std::vector<std::int64_t> structure, std::vector<std::size_t> star);

  std::size_t rank() const noexcept { return rank_; }

  std::int64_t n(std::size_t j, std::size_t k, std::size_t s) const {
    return structure_[(j * rank_ + k) * rank_ + s];
  }
  std::size_t star(std::size_t j) const { return star_[j]; }
  const std::vector<std::size_t>& star_map() const noexcept { return star_; }
  const std::vector<std::int64_t>& structure() const noexcept { return structure_; }

  /// Fusion matrix (M_j)_{s,t} = N[j][s][t]: multiplication by x_j acting on row indices.
  Eigen::MatrixXd fusion_matrix(std::size_t j) const;

  /// Left-regular matrix (L_j)_{s,k} = N[j][k][s]; L(b) = Σ b_j L_j represents b on ℓ²(basis).
  Eigen::MatrixXd left_matrix(std::size_t j) const;

  /// True iff all fusion matrices pairwise commute (exact, on integers).
  bool is_commutative() const;

  /// Relabels basis elements: new index perm[i] holds old index i. perm[0] must be 0.
  FusionRing relabeled(const std::vector<std::size_t>& perm) const;

  friend bool operator==(const FusionRing&, const FusionRing&) = default;

 private:
  std::size_t rank_;
  std::vector<std::int64_t> structure_;
  std::vector<std::size_t> star_;
};

/// Parses {"rank": m, "star": [...], "N": m×m×m nested integer arrays}.
/// Throws ParseError (with line/column), ValueError or ShapeError.
FusionRing parse_ring(std::string_view text);
FusionRing load_ring(const std::string& path);
std::string ring_to_json(const FusionRing& ring);

/// Built-in rings used by tests, benchmarks and the CLI.
FusionRing cyclic_group_ring(std::size_t n);
FusionRing fibonacci_ring();

enum class Axiom {
  StarNotPermutation,
  StarNotInvolution,
  StarUnit,
  UnitLaw,
  Duality,
  Associativity,
  AntiIsomorphism,
};

std::string_view axiom_name(Axiom axiom);

struct Violation {
  Axiom axiom;
  std::vector<std::size_t> indices;  // the witnessing (j, k, ...) tuple
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const noexcept { return violations.empty(); }
  bool contains(Axiom axiom) const;
};

/// Checks every ring axiom in exact integer arithmetic. Violations are data, never thrown.
ValidationReport validate(const FusionRing& ring);

/// Perron–Frobenius dimensions d_j = largest eigenvalue of M_j, with d_0 = 1.
/// Throws NumericalError carrying j when the eigen solver fails.
std::vector<double> pf_dimensions(const FusionRing& ring);

double global_dimension(const std::vector<double>& dims);

/// Simultaneous eigendata of the fusion matrices of a commutative ring.
struct CharacterTable {
  /// entries(i, col) = eigenvalue of M_i on eigenvector col. Column 0 holds the PF dimensions.
  Eigen::MatrixXcd entries;
  /// Common unit eigenvectors, one per column, phase fixed so component 0 is real positive.
  Eigen::MatrixXcd eigenvectors;
  /// residuals(i, col) = ‖M_i v_col − c[i][col] v_col‖₂.
  Eigen::MatrixXd residuals;
  std::vector<double> pf_dims;
  /// Index of the column equal to the entrywise conjugate of `col`.
  std::vector<std::size_t> conjugate_column;
  std::uint64_t seed_used = 0;

  std::size_t rank() const { return static_cast<std::size_t>(entries.rows()); }
  double max_residual() const { return residuals.size() ? residuals.maxCoeff() : 0.0; }
};

struct CharacterTableOptions {
  std::uint64_t seed = 0x5eed;
  int retry_budget = 5;
  double residual_tolerance = 1e-8;
};

/// Throws UnsupportedStructure for noncommutative rings and NumericalError when the
/// residuals stay above tolerance after the retry budget.
CharacterTable character_table(const FusionRing& ring, const CharacterTableOptions& options = {});

}  // namespace qfa
