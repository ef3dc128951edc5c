#pragma once

#include <complex>
#include <functional>
#include <limits>

#include <Eigen/Dense>

namespace qfa {

using cplx = std::complex<double>;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

namespace spectral {

/// Eigenvalues above this negative margin are clamped to zero before fractional powers.
inline constexpr double kClampTolerance = 1e-9;

struct HermitianSpectrum {
  Eigen::VectorXd values;   // ascending
  Eigen::MatrixXcd vectors; // columns are orthonormal eigenvectors
};

/// Eigendecomposition of the Hermitian part (H + H†)/2.
HermitianSpectrum hermitian_eig(const Eigen::MatrixXcd& h);

/// Largest deviation |H - H†| entrywise.
double hermitian_defect(const Eigen::MatrixXcd& h);

/// Applies `f` to the spectrum of the Hermitian matrix `h`.
Eigen::MatrixXcd hermitian_apply(const Eigen::MatrixXcd& h, const std::function<double(double)>& f);

/// h^s for a positive semidefinite h. Eigenvalues in [-kClampTolerance, 0] are clamped to 0;
/// anything more negative is a DomainError. Zero eigenvalues map to 0 for every s >= 0
/// (so h^0 is the support projection) and raise SingularPowerError for s < 0.
Eigen::MatrixXcd psd_power(const Eigen::MatrixXcd& h, double s);

/// Natural log of a positive definite matrix; SingularPowerError on a zero eigenvalue.
Eigen::MatrixXcd pd_log(const Eigen::MatrixXcd& h);

/// Singular values, descending.
Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m);

/// Schatten p-norm (Σ σ^p)^{1/p} under the plain matrix trace; p = kInf gives the operator norm.
/// Scaled internally so large p does not overflow.
double schatten_norm(const Eigen::MatrixXcd& m, double p);

/// -Σ λ log λ over the eigenvalues of a PSD matrix with 0·log 0 = 0.
double von_neumann_sum(const Eigen::VectorXd& eigenvalues);

/// 1/p + 1/q = 1, with p = 1 mapping to kInf and kInf to 1.
double conjugate_exponent(double p);

}  // namespace spectral
}  // namespace qfa
