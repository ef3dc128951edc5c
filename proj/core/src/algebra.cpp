#include "qfa/algebra.hpp"

#include <algorithm>
#include <cmath>

#include "qfa/errors.hpp"

namespace qfa {

std::string_view side_name(Side side) { return side == Side::A ? "A" : "B"; }

FusionAlgebra::FusionAlgebra(Token, FusionRing ring) : ring_(std::move(ring)) {
  dims_ = pf_dimensions(ring_);
  global_dim_ = qfa::global_dimension(dims_);
  left_.reserve(ring_.rank());
  for (std::size_t j = 0; j < ring_.rank(); ++j) left_.push_back(ring_.left_matrix(j));
}

std::shared_ptr<const FusionAlgebra> FusionAlgebra::create(FusionRing ring) {
  return std::make_shared<const FusionAlgebra>(Token{}, std::move(ring));
}

AlgebraElement FusionAlgebra::element(Side side, Eigen::VectorXcd coeffs) const {
  return AlgebraElement(shared_from_this(), side, std::move(coeffs));
}

AlgebraElement FusionAlgebra::basis(Side side, std::size_t j) const {
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rank()));
  c[static_cast<Eigen::Index>(j)] = 1.0;
  return element(side, std::move(c));
}

AlgebraElement FusionAlgebra::zero(Side side) const {
  return element(side, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(rank())));
}

AlgebraElement FusionAlgebra::unit(Side side) const {
  if (side == Side::B) return basis(Side::B, 0);
  Eigen::VectorXcd c(static_cast<Eigen::Index>(rank()));
  for (std::size_t j = 0; j < rank(); ++j) c[static_cast<Eigen::Index>(j)] = dims_[j];
  return element(Side::A, std::move(c));
}

AlgebraElement::AlgebraElement(std::shared_ptr<const FusionAlgebra> algebra, Side side, Eigen::VectorXcd coeffs)
    : algebra_(std::move(algebra)), side_(side), coeffs_(std::move(coeffs)) {
  if (!algebra_) throw ContractError("element without an algebra");
  if (static_cast<std::size_t>(coeffs_.size()) != algebra_->rank()) {
    throw ShapeError("element has " + std::to_string(coeffs_.size()) + " coefficients, ring rank is " +
                     std::to_string(algebra_->rank()));
  }
}

Eigen::MatrixXcd AlgebraElement::left_representation() const {
  if (side_ != Side::B) throw ContractError("left_representation is defined on the B side");
  const auto m = static_cast<Eigen::Index>(rank());
  Eigen::MatrixXcd l = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    if (coeffs_[j] != cplx(0.0)) l += coeffs_[j] * algebra_->left_matrix(static_cast<std::size_t>(j)).cast<cplx>();
  }
  return l;
}

namespace {

void require_compatible(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.side() != b.side()) throw ContractError("operands live on different sides");
  if (&a.algebra() != &b.algebra() && !(a.algebra().ring() == b.algebra().ring())) {
    throw ContractError("operands belong to different fusion rings");
  }
}

Eigen::VectorXcd fusion_product(const FusionAlgebra& alg, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  const std::size_t m = alg.rank();
  const FusionRing& ring = alg.ring();
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(m));
  for (std::size_t j = 0; j < m; ++j) {
    const cplx aj = a[static_cast<Eigen::Index>(j)];
    if (aj == cplx(0.0)) continue;
    for (std::size_t k = 0; k < m; ++k) {
      const cplx ajbk = aj * b[static_cast<Eigen::Index>(k)];
      if (ajbk == cplx(0.0)) continue;
      for (std::size_t s = 0; s < m; ++s) {
        const auto nn = ring.n(j, k, s);
        if (nn != 0) out[static_cast<Eigen::Index>(s)] += static_cast<double>(nn) * ajbk;
      }
    }
  }
  return out;
}

Eigen::VectorXcd diamond_product(const FusionAlgebra& alg, const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  Eigen::VectorXcd out(a.size());
  for (Eigen::Index j = 0; j < a.size(); ++j) out[j] = a[j] * b[j] / alg.dim(static_cast<std::size_t>(j));
  return out;
}

}  // namespace

AlgebraElement AlgebraElement::operator+(const AlgebraElement& other) const {
  require_compatible(*this, other);
  return {algebra_, side_, coeffs_ + other.coeffs_};
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& other) const {
  require_compatible(*this, other);
  return {algebra_, side_, coeffs_ - other.coeffs_};
}

AlgebraElement AlgebraElement::operator*(cplx scalar) const { return {algebra_, side_, coeffs_ * scalar}; }

AlgebraElement multiply(const AlgebraElement& a, const AlgebraElement& b) {
  require_compatible(a, b);
  const FusionAlgebra& alg = a.algebra();
  if (a.side() == Side::A) return {a.algebra_ptr(), Side::A, diamond_product(alg, a.coeffs(), b.coeffs())};
  return {a.algebra_ptr(), Side::B, fusion_product(alg, a.coeffs(), b.coeffs())};
}

AlgebraElement adjoint(const AlgebraElement& a) {
  if (a.side() == Side::A) return {a.algebra_ptr(), Side::A, a.coeffs().conjugate()};
  const FusionRing& ring = a.algebra().ring();
  Eigen::VectorXcd out(a.coeffs().size());
  for (std::size_t j = 0; j < ring.rank(); ++j) {
    out[static_cast<Eigen::Index>(j)] = std::conj(a[ring.star(j)]);
  }
  return {a.algebra_ptr(), Side::B, std::move(out)};
}

AlgebraElement fourier(const AlgebraElement& a) {
  if (a.side() != Side::A) throw ContractError("fourier expects an A-side element");
  return a.retagged(Side::B);
}

AlgebraElement inverse_fourier(const AlgebraElement& b) {
  if (b.side() != Side::B) throw ContractError("inverse_fourier expects a B-side element");
  return b.retagged(Side::A);
}

AlgebraElement convolve(const AlgebraElement& a, const AlgebraElement& b) {
  require_compatible(a, b);
  const FusionAlgebra& alg = a.algebra();
  if (a.side() == Side::A) return {a.algebra_ptr(), Side::A, fusion_product(alg, a.coeffs(), b.coeffs())};
  return {a.algebra_ptr(), Side::B, diamond_product(alg, a.coeffs(), b.coeffs())};
}

cplx trace(const AlgebraElement& a) {
  if (a.side() == Side::B) return a[0];
  cplx t = 0.0;
  for (std::size_t j = 0; j < a.rank(); ++j) t += a[j] * a.algebra().dim(j);
  return t;
}

WeightedSpectrum abs_spectrum(const AlgebraElement& a) {
  WeightedSpectrum out;
  const std::size_t m = a.rank();
  out.values.reserve(m);
  out.weights.reserve(m);
  if (a.side() == Side::A) {
    // a = Σ (a_j/d_j) p_j with minimal projections p_j = d_j x_j and d(p_j) = d_j².
    for (std::size_t j = 0; j < m; ++j) {
      const double d = a.algebra().dim(j);
      out.values.push_back(std::abs(a[j]) / d);
      out.weights.push_back(d * d);
    }
    return out;
  }
  const Eigen::MatrixXcd l = a.left_representation();
  const spectral::HermitianSpectrum s = spectral::hermitian_eig(l.adjoint() * l);
  for (Eigen::Index k = 0; k < s.values.size(); ++k) {
    out.values.push_back(std::sqrt(std::max(s.values[k], 0.0)));
    out.weights.push_back(std::norm(s.vectors(0, k)));
  }
  return out;
}

double norm_p(const AlgebraElement& a, double p) {
  if (!(p >= 1.0)) throw DomainError("norm_p requires p >= 1, got " + std::to_string(p));
  const WeightedSpectrum s = abs_spectrum(a);
  const double top = s.values.empty() ? 0.0 : *std::max_element(s.values.begin(), s.values.end());
  if (std::isinf(p)) return top;
  if (top == 0.0) return 0.0;
  double acc = 0.0;
  for (std::size_t k = 0; k < s.values.size(); ++k) acc += s.weights[k] * std::pow(s.values[k] / top, p);
  return top * std::pow(acc, 1.0 / p);
}

Positivity is_positive(const AlgebraElement& a) {
  Positivity out;
  if (a.side() == Side::A) {
    double margin = kInf;
    double imag = 0.0;
    for (std::size_t j = 0; j < a.rank(); ++j) {
      margin = std::min(margin, a[j].real() / a.algebra().dim(j));
      imag = std::max(imag, std::abs(a[j].imag()) / a.algebra().dim(j));
    }
    out.margin = margin;
    out.positive = imag <= kPositivityTolerance && margin >= -kPositivityTolerance;
    return out;
  }
  const Eigen::MatrixXcd l = a.left_representation();
  const double defect = spectral::hermitian_defect(l);
  const spectral::HermitianSpectrum s = spectral::hermitian_eig(l);
  out.margin = s.values.size() ? s.values[0] : 0.0;
  out.positive = defect <= kPositivityTolerance && out.margin >= -kPositivityTolerance;
  return out;
}

double entropy(const AlgebraElement& a) {
  const WeightedSpectrum s = abs_spectrum(a);
  double h = 0.0;
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    const double v2 = s.values[k] * s.values[k];
    if (v2 > 0.0) h -= s.weights[k] * v2 * std::log(v2);
  }
  return h;
}

double support(const AlgebraElement& a) {
  const WeightedSpectrum s = abs_spectrum(a);
  const double top = *std::max_element(s.values.begin(), s.values.end());
  if (top == 0.0) throw DomainError("support of the zero element");
  double total = 0.0;
  for (std::size_t k = 0; k < s.values.size(); ++k) {
    if (s.values[k] > kSupportRelativeTolerance * top) total += s.weights[k];
  }
  return total;
}

}  // namespace qfa
