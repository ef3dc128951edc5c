#include "qfa/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "qfa/errors.hpp"

namespace qfa::spectral {

HermitianSpectrum hermitian_eig(const Eigen::MatrixXcd& h) {
  const Eigen::MatrixXcd sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(sym);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigendecomposition did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

double hermitian_defect(const Eigen::MatrixXcd& h) {
  if (h.size() == 0) return 0.0;
  return (h - h.adjoint()).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd hermitian_apply(const Eigen::MatrixXcd& h, const std::function<double(double)>& f) {
  const HermitianSpectrum s = hermitian_eig(h);
  Eigen::VectorXd mapped(s.values.size());
  for (Eigen::Index i = 0; i < s.values.size(); ++i) mapped[i] = f(s.values[i]);
  return s.vectors * mapped.cast<cplx>().asDiagonal() * s.vectors.adjoint();
}

namespace {

double clamp_nonnegative(double lambda) {
  if (lambda < -kClampTolerance) {
    throw DomainError("fractional power of a matrix with eigenvalue " + std::to_string(lambda));
  }
  return std::max(lambda, 0.0);
}

}  // namespace

Eigen::MatrixXcd psd_power(const Eigen::MatrixXcd& h, double s) {
  return hermitian_apply(h, [s](double lambda) {
    const double v = clamp_nonnegative(lambda);
    if (v == 0.0) {
      if (s < 0.0) throw SingularPowerError("negative power of a singular positive element");
      return 0.0;
    }
    return std::pow(v, s);
  });
}

Eigen::MatrixXcd pd_log(const Eigen::MatrixXcd& h) {
  return hermitian_apply(h, [](double lambda) {
    const double v = clamp_nonnegative(lambda);
    if (v == 0.0) throw SingularPowerError("logarithm of a singular positive element");
    return std::log(v);
  });
}

Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

double schatten_norm(const Eigen::MatrixXcd& m, double p) {
  if (m.size() == 0) return 0.0;
  const Eigen::VectorXd sv = singular_values(m);
  const double top = sv.maxCoeff();
  if (std::isinf(p)) return top;
  if (top == 0.0) return 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::pow(sv[i] / top, p);
  return top * std::pow(acc, 1.0 / p);
}

double von_neumann_sum(const Eigen::VectorXd& eigenvalues) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double v = eigenvalues[i];
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

double conjugate_exponent(double p) {
  if (p == 1.0) return kInf;
  if (std::isinf(p)) return 1.0;
  return p / (p - 1.0);
}

}  // namespace qfa::spectral
