#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfa/algebra.hpp"
#include "qfa/group.hpp"

namespace qfa {

/// The 2-box pair of a finite group G with δ = √|G|.
///
/// A side: functions on G, pointwise product, counting trace (tr 1 = δ²), realized as diagonal
/// operators. B side: the group algebra, realized through the left regular representation,
/// whose plain matrix trace is |G|·(coefficient of e). Both traces are therefore the matrix
/// trace of the realizing operator, and Schatten norms are taken under it.
///
/// Fourier transform F(f) = δ⁻¹ Σ_g f(g) λ_g; the B → A rotation is (F b)(g) = δ·b(g⁻¹).
class GroupModel {
 public:
  explicit GroupModel(FiniteGroup group);

  const FiniteGroup& group() const noexcept { return group_; }
  std::size_t order() const noexcept { return group_.order(); }
  double delta() const noexcept { return delta_; }

  /// B-side coefficients of F(f).
  Eigen::VectorXcd dft(const Eigen::VectorXcd& f) const;
  Eigen::VectorXcd inverse_dft(const Eigen::VectorXcd& b) const;
  /// One further click: group-algebra coefficients back to a function, F(b)(g) = δ b(g⁻¹).
  Eigen::VectorXcd rotate_b_to_a(const Eigen::VectorXcd& b) const;

  /// Left regular matrix Σ_g b_g λ_g, entry (gh, h) += b_g.
  Eigen::MatrixXcd regular(const Eigen::VectorXcd& b) const;
  /// Coefficients of an operator in the image of `regular`: its column at e.
  Eigen::VectorXcd coefficients(const Eigen::MatrixXcd& op) const { return op.col(0); }
  static Eigen::MatrixXcd diagonal(const Eigen::VectorXcd& f) { return f.asDiagonal(); }

  /// Operator realizing F(f).
  Eigen::MatrixXcd fourier_operator(const Eigen::VectorXcd& f) const { return regular(dft(f)); }

  /// Classical convolution (x⋆y)(g) = Σ_h x(h) y(h⁻¹g), unnormalized.
  Eigen::VectorXcd convolve(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const;

  double norm_a(const Eigen::VectorXcd& f, double p) const;
  double norm_b(const Eigen::MatrixXcd& op, double p) const;

  /// 1_H. DomainError if H is not a subgroup.
  Eigen::VectorXcd biprojection(const std::vector<std::size_t>& h) const;
  /// x ↦ χ(x)·1_{gH}(x).
  Eigen::VectorXcd bishift(const std::vector<std::size_t>& h, std::size_t g, const LinearCharacter& chi) const;
  /// Range projection of the B-side operator F(1_H), realized.
  Eigen::MatrixXcd subgroup_projection(const std::vector<std::size_t>& h) const;

  /// Trace of the range projection (relative threshold 1e-8).
  double support_a(const Eigen::VectorXcd& f) const;
  double support_b(const Eigen::MatrixXcd& op) const;

 private:
  FiniteGroup group_;
  double delta_;
};

/// Positive trace-one operator on one side, with faithfulness recorded.
struct DensityState {
  Side side = Side::A;
  Eigen::MatrixXcd density;
  bool faithful = false;
};

inline constexpr double kStateTolerance = 1e-10;
inline constexpr double kFaithfulThreshold = 1e-12;

/// ValueError unless `density` is positive within 1e-10 with trace 1 within 1e-10.
DensityState make_state(Side side, Eigen::MatrixXcd density);
DensityState state_from_function(const Eigen::VectorXcd& values);
DensityState state_from_coefficients(const GroupModel& model, const Eigen::VectorXcd& b);
DensityState trace_state(const GroupModel& model, Side side);
/// A-side point mass at the identity.
DensityState point_mass_state(const GroupModel& model);
/// Faithful random states: A-side weights −log u + 1e-3; B-side |a|² + 0.05 in the group algebra.
DensityState random_state(const GroupModel& model, Side side, std::mt19937_64& rng);

/// F(x D_φ^{1/2}) D_ψ^{1/q − 1/2} as a B-side operator. SingularPowerError if ψ is singular and q > 2.
Eigen::MatrixXcd relative_fourier(const GroupModel& model, const Eigen::VectorXcd& x, double p,
                                  const DensityState& phi, const DensityState& psi);
/// δ^{−2/p}‖D_ψ^{1/q−1/2}‖_∞ ‖F(D_φ^{1/2−1/p})‖_1.
double rqhy_constant(const GroupModel& model, double p, const DensityState& phi, const DensityState& psi);
/// K‖x D_φ^{1/p}‖_p − ‖relative_fourier(x)‖_q.
double rqhy_margin(const GroupModel& model, const Eigen::VectorXcd& x, double p, const DensityState& phi,
                   const DensityState& psi);

/// tr(D_ω(log D_ω − log D_φ)); kInf when the support of ω leaves the support of φ.
double relative_entropy(const DensityState& omega, const DensityState& phi);

/// |F(D_ω^{1/2})|² on the B side.
DensityState hat_state(const GroupModel& model, const DensityState& omega);

/// (1/δ)‖P⊥ F(log D_φ) P⊥‖₁ with P the projection (1/n)Σ_g λ_g.
double req_up_kink(const GroupModel& model, const DensityState& phi);

struct ReqUpReport {
  double relative_entropy = 0.0;      // S(ω‖φ)
  double hat_relative_entropy = 0.0;  // S(ω̂‖ψ)
  double lhs = 0.0;
  /// log‖D_ψ⁻¹‖_∞ − δ⁻² tr log D_φ − 2 log δ, as printed.
  double rhs = 0.0;
  double kink = 0.0;
  double margin = 0.0;            // rhs − lhs
  double corrected_margin = 0.0;  // rhs + kink − lhs
};
/// φ and ψ must be faithful (SingularPowerError otherwise).
ReqUpReport req_up_check(const GroupModel& model, const DensityState& omega, const DensityState& phi,
                         const DensityState& psi);

/// ‖D_ω̂^{1/2} D_ψ^{1/q−1/2}‖_q − K_{p,φ,ψ}‖D_ω^{1/2} D_φ^{1/p−1/2}‖_p for p in [1, 2].
double f_curve(const GroupModel& model, const DensityState& omega, const DensityState& phi,
               const DensityState& psi, double p);

struct DerivativeReport {
  double f_at_2 = 0.0;
  /// One-sided second-order differences at the two step sizes, Richardson-combined.
  double fd_value = 0.0;
  /// −S/4 − Ŝ/4 − K′₋(2) including the one-sided kink of ‖F(D_φ^{1/2−1/p})‖₁.
  double analytic_value = 0.0;
  /// The same assembly with K′ taken without the kink term.
  double literal_value = 0.0;
  double abs_gap = 0.0;
  std::array<double, 2> step_sizes = {1e-3, 1e-4};
};
DerivativeReport derivative_check(const GroupModel& model, const DensityState& omega, const DensityState& phi,
                                  const DensityState& psi);

/// H_A(|x|²) + H_B(|F x|²) + 2‖x‖₂² log ‖x‖₂² − ‖x‖₂² log δ², nonnegative in the group model.
double group_qup1(const GroupModel& model, const Eigen::VectorXcd& x);
/// S_A(x)·S_B(F x)/δ².
double group_qup2(const GroupModel& model, const Eigen::VectorXcd& x);
/// ‖F x‖_q / ‖x‖_p.
double hausdorff_young_ratio(const GroupModel& model, const Eigen::VectorXcd& x, double p, double q);

/// exp(πi g²/n) for even n, exp(2πi g²/n) for odd n: unimodular with unimodular Fourier transform.
Eigen::VectorXcd chirp(std::size_t n);

}  // namespace qfa
