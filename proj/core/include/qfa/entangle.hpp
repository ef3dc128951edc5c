#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "qfa/spectral.hpp"

namespace qfa {

inline constexpr std::size_t kDefaultDimensionCap = std::size_t{1} << 16;

/// QFA_DIM_CAP if set to a positive integer, else kDefaultDimensionCap.
std::size_t dimension_cap();

/// d^n, or ResourceError when it exceeds `cap`.
std::size_t checked_dimension(std::size_t n, std::size_t d, std::size_t cap);

/// Amplitudes indexed by the base-d digits (k_1 … k_n), k_1 most significant.
struct QuditState {
  std::size_t n = 0;
  std::size_t d = 0;
  Eigen::VectorXcd amplitudes;
};

/// QFT^{⊗n} applied to GHZ: d^{(1−n)/2} Σ_{k_1+…+k_n ≡ 0} |k_1 … k_n⟩. For n = 2 this is d^{-1/2} Σ_k |k, −k⟩.
QuditState max_state(std::size_t n, std::size_t d, std::size_t cap = dimension_cap());
/// d^{-1/2} Σ_k |k … k⟩.
QuditState ghz_state(std::size_t n, std::size_t d, std::size_t cap = dimension_cap());
/// |k_1 … k_n⟩.
QuditState product_state(const std::vector<std::size_t>& digits, std::size_t d, std::size_t cap = dimension_cap());
/// Unitary QFT on every qudit.
QuditState apply_fourier(const QuditState& state);

/// Von Neumann entropy of the reduced state on the qudits in `cut` (natural log).
/// DomainError for an empty, full or out-of-range cut.
double entanglement_entropy(const QuditState& state, const std::vector<std::size_t>& cut);

}  // namespace qfa
