#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "qfa/fusion_ring.hpp"
#include "qfa/spectral.hpp"

namespace qfa {

/// A: the abelian algebra (◊, #, functional d).  B: the fusion algebra (product, *, trace τ).
enum class Side { A, B };

std::string_view side_name(Side side);

class AlgebraElement;

/// Shared context for elements over one fusion ring: the ring, its PF dimensions and the
/// left-regular matrices used to represent B-side elements.
class FusionAlgebra : public std::enable_shared_from_this<FusionAlgebra> {
 public:
  /// Computes PF dimensions. The ring is assumed valid.
  static std::shared_ptr<const FusionAlgebra> create(FusionRing ring);

  const FusionRing& ring() const noexcept { return ring_; }
  std::size_t rank() const noexcept { return ring_.rank(); }
  const std::vector<double>& dims() const noexcept { return dims_; }
  double dim(std::size_t j) const { return dims_[j]; }
  double global_dimension() const noexcept { return global_dim_; }
  const Eigen::MatrixXd& left_matrix(std::size_t j) const { return left_[j]; }

  AlgebraElement element(Side side, Eigen::VectorXcd coeffs) const;
  AlgebraElement basis(Side side, std::size_t j) const;
  AlgebraElement zero(Side side) const;
  /// A-side unit Σ d_j x_j; B-side unit x_0.
  AlgebraElement unit(Side side) const;

  struct Token {};
  FusionAlgebra(Token, FusionRing ring);

 private:
  FusionRing ring_;
  std::vector<double> dims_;
  double global_dim_ = 0.0;
  std::vector<Eigen::MatrixXd> left_;
};

/// Coefficient vector over the basis {x_j}, tagged with the algebra structure it lives in.
class AlgebraElement {
 public:
  AlgebraElement(std::shared_ptr<const FusionAlgebra> algebra, Side side, Eigen::VectorXcd coeffs);

  Side side() const noexcept { return side_; }
  const Eigen::VectorXcd& coeffs() const noexcept { return coeffs_; }
  cplx operator[](std::size_t j) const { return coeffs_[static_cast<Eigen::Index>(j)]; }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(coeffs_.size()); }
  const FusionAlgebra& algebra() const noexcept { return *algebra_; }
  const std::shared_ptr<const FusionAlgebra>& algebra_ptr() const noexcept { return algebra_; }

  /// Same coefficients, other side.
  AlgebraElement retagged(Side side) const { return {algebra_, side, coeffs_}; }

  /// B-side only: L(b) = Σ b_j L_j acting on ℓ²(basis), so that τ(f(b)) = ⟨e₀, f(L(b)) e₀⟩.
  Eigen::MatrixXcd left_representation() const;

  AlgebraElement operator+(const AlgebraElement& other) const;
  AlgebraElement operator-(const AlgebraElement& other) const;
  AlgebraElement operator*(cplx scalar) const;

 private:
  std::shared_ptr<const FusionAlgebra> algebra_;
  Side side_;
  Eigen::VectorXcd coeffs_;
};

/// A-side: (a◊b)_j = a_j b_j / d_j.  B-side: (ab)_s = Σ a_j b_k N[j][k][s].
AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b);
AlgebraElement adjoint(const AlgebraElement& a);
AlgebraElement fourier(const AlgebraElement& a);
AlgebraElement inverse_fourier(const AlgebraElement& b);
/// Product of the opposite side transported by the Fourier transform.
AlgebraElement convolve(const AlgebraElement& a, const AlgebraElement& b);
/// A-side: d(a) = Σ a_j d_j.  B-side: τ(a) = a_0.
cplx trace(const AlgebraElement& a);

/// ‖a‖_p = trace(|a|^p)^{1/p}; p = kInf gives the operator norm. DomainError for p < 1.
double norm_p(const AlgebraElement& a, double p);

struct Positivity {
  bool positive = false;
  double margin = 0.0;  // smallest spectral value of the Hermitian part
};
inline constexpr double kPositivityTolerance = 1e-9;
Positivity is_positive(const AlgebraElement& a);

/// Von Neumann entropy H(|a|²) = -trace(|a|² log |a|²) with 0·log 0 = 0.
double entropy(const AlgebraElement& a);

/// trace of the range projection of a, dropping spectral values below 1e-8·max. DomainError on a = 0.
inline constexpr double kSupportRelativeTolerance = 1e-8;
double support(const AlgebraElement& a);

/// Spectral values of |a|: on A these are |a_j|/d_j with multiplicity weight d_j², on B the
/// singular values of L(b). Returned with the trace weight of each spectral projection.
struct WeightedSpectrum {
  std::vector<double> values;
  std::vector<double> weights;
};
WeightedSpectrum abs_spectrum(const AlgebraElement& a);

/// {"side": "A"|"B", "coeffs": [[re, im], ...]}
std::string element_to_json(const AlgebraElement& a);
AlgebraElement element_from_json(const std::shared_ptr<const FusionAlgebra>& algebra, std::string_view text);

}  // namespace qfa
