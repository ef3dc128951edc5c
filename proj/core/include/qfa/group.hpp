#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "qfa/spectral.hpp"

namespace qfa {

/// A linear character χ(g) = exp(2πi·phase[g]/exponent).
struct LinearCharacter {
  std::vector<std::size_t> phase;
  std::size_t exponent = 1;
  cplx operator()(std::size_t g) const;
  bool trivial() const;
};

/// Finite group given by its multiplication table, identity at index 0.
class FiniteGroup {
 public:
  /// Checks the group axioms exactly. ShapeError for a ragged table or out-of-range entries,
  /// ValueError when identity, inverses or associativity fail.
  static FiniteGroup from_table(std::vector<std::vector<std::size_t>> table, std::string description = "table");
  static FiniteGroup cyclic(std::size_t n);
  /// Z/n1 × Z/n2 × …, mixed-radix indexed with the first factor most significant.
  static FiniteGroup abelian(const std::vector<std::size_t>& factors);
  /// Permutations of {0,1,2} in lexicographic order, composed as (ab)(i) = a(b(i)).
  static FiniteGroup symmetric3();

  std::size_t order() const noexcept { return table_.size(); }
  std::size_t mul(std::size_t g, std::size_t h) const { return table_[g][h]; }
  std::size_t inv(std::size_t g) const { return inverse_[g]; }
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }
  const std::string& description() const noexcept { return description_; }
  const std::vector<std::size_t>& abelian_factors() const noexcept { return factors_; }
  bool is_abelian() const;
  /// Least common multiple of element orders.
  std::size_t exponent() const;
  std::size_t element_order(std::size_t g) const;

  bool is_subgroup(const std::vector<std::size_t>& elements) const;
  /// Every subgroup as a sorted element list, ordered by (size, elements).
  std::vector<std::vector<std::size_t>> subgroups() const;
  /// Sorted left coset gH.
  std::vector<std::size_t> left_coset(std::size_t g, const std::vector<std::size_t>& h) const;
  /// All homomorphisms G → U(1), trivial first.
  std::vector<LinearCharacter> linear_characters() const;
  /// Applies a bijection of the underlying set and transports the table. perm[0] must be 0.
  FiniteGroup relabeled(const std::vector<std::size_t>& perm) const;

 private:
  FiniteGroup() = default;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> inverse_;
  std::vector<std::size_t> factors_;
  std::string description_;
};

/// {"abelian": [n1, n2, ...]} or {"table": n×n array}.
FiniteGroup parse_group(std::string_view text);
/// "Z/n", "Z/a x Z/b" and "S3".
FiniteGroup group_from_name(std::string_view name);

}  // namespace qfa
