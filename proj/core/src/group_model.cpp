#include "qfa/group_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qfa/errors.hpp"

namespace qfa {

namespace sp = spectral;

GroupModel::GroupModel(FiniteGroup group)
    : group_(std::move(group)), delta_(std::sqrt(static_cast<double>(group_.order()))) {}

Eigen::VectorXcd GroupModel::dft(const Eigen::VectorXcd& f) const { return f / delta_; }

Eigen::VectorXcd GroupModel::inverse_dft(const Eigen::VectorXcd& b) const { return b * delta_; }

Eigen::VectorXcd GroupModel::rotate_b_to_a(const Eigen::VectorXcd& b) const {
  Eigen::VectorXcd f(b.size());
  for (std::size_t g = 0; g < order(); ++g) {
    f[static_cast<Eigen::Index>(g)] = delta_ * b[static_cast<Eigen::Index>(group_.inv(g))];
  }
  return f;
}

Eigen::MatrixXcd GroupModel::regular(const Eigen::VectorXcd& b) const {
  const auto n = static_cast<Eigen::Index>(order());
  if (b.size() != n) throw ShapeError("group algebra element has the wrong length");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t g = 0; g < order(); ++g) {
    for (std::size_t h = 0; h < order(); ++h) {
      m(static_cast<Eigen::Index>(group_.mul(g, h)), static_cast<Eigen::Index>(h)) += b[static_cast<Eigen::Index>(g)];
    }
  }
  return m;
}

Eigen::VectorXcd GroupModel::convolve(const Eigen::VectorXcd& x, const Eigen::VectorXcd& y) const {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(x.size());
  for (std::size_t g = 0; g < order(); ++g) {
    for (std::size_t h = 0; h < order(); ++h) {
      out[static_cast<Eigen::Index>(group_.mul(g, h))] += x[static_cast<Eigen::Index>(g)] * y[static_cast<Eigen::Index>(h)];
    }
  }
  return out;
}

double GroupModel::norm_a(const Eigen::VectorXcd& f, double p) const {
  return sp::schatten_norm(diagonal(f), p);
}

double GroupModel::norm_b(const Eigen::MatrixXcd& op, double p) const { return sp::schatten_norm(op, p); }

Eigen::VectorXcd GroupModel::biprojection(const std::vector<std::size_t>& h) const {
  if (!group_.is_subgroup(h)) throw DomainError("biprojection: not a subgroup");
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(order()));
  for (std::size_t x : h) f[static_cast<Eigen::Index>(x)] = 1.0;
  return f;
}

Eigen::VectorXcd GroupModel::bishift(const std::vector<std::size_t>& h, std::size_t g,
                                     const LinearCharacter& chi) const {
  if (!group_.is_subgroup(h)) throw DomainError("bishift: not a subgroup");
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(order()));
  for (std::size_t x : group_.left_coset(g, h)) f[static_cast<Eigen::Index>(x)] = chi(x);
  return f;
}

Eigen::MatrixXcd GroupModel::subgroup_projection(const std::vector<std::size_t>& h) const {
  return fourier_operator(biprojection(h)) * (delta_ / static_cast<double>(h.size()));
}

double GroupModel::support_a(const Eigen::VectorXcd& f) const {
  const double top = f.cwiseAbs().maxCoeff();
  if (top == 0.0) throw DomainError("support of the zero function");
  return static_cast<double>((f.cwiseAbs().array() > kSupportRelativeTolerance * top).count());
}

double GroupModel::support_b(const Eigen::MatrixXcd& op) const {
  const Eigen::VectorXd s = sp::singular_values(op);
  if (s.size() == 0 || s[0] == 0.0) throw DomainError("support of the zero element");
  return static_cast<double>((s.array() > kSupportRelativeTolerance * s[0]).count());
}

DensityState make_state(Side side, Eigen::MatrixXcd density) {
  if (density.rows() != density.cols()) throw ShapeError("density is not square");
  if (sp::hermitian_defect(density) > kStateTolerance) throw ValueError("density is not self-adjoint");
  const Eigen::VectorXd ev = sp::hermitian_eig(density).values;
  if (ev[0] < -kStateTolerance) throw ValueError("density is not positive");
  if (std::abs(density.trace() - cplx(1.0)) > kStateTolerance) throw ValueError("density does not have trace 1");
  return {side, std::move(density), ev[0] > kFaithfulThreshold};
}

DensityState state_from_function(const Eigen::VectorXcd& values) {
  return make_state(Side::A, GroupModel::diagonal(values));
}

DensityState state_from_coefficients(const GroupModel& model, const Eigen::VectorXcd& b) {
  return make_state(Side::B, model.regular(b));
}

DensityState trace_state(const GroupModel& model, Side side) {
  const auto n = static_cast<Eigen::Index>(model.order());
  const double w = 1.0 / static_cast<double>(n);
  return {side, Eigen::MatrixXcd::Identity(n, n) * w, true};
}

DensityState point_mass_state(const GroupModel& model) {
  Eigen::VectorXcd f = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(model.order()));
  f[0] = 1.0;
  return state_from_function(f);
}

DensityState random_state(const GroupModel& model, Side side, std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(model.order());
  if (side == Side::A) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Eigen::VectorXcd w(n);
    for (Eigen::Index g = 0; g < n; ++g) w[g] = -std::log(1.0 - u(rng)) + 1e-3;
    return state_from_function(w / w.sum().real());
  }
  std::normal_distribution<double> gauss;
  Eigen::VectorXcd a(n);
  for (Eigen::Index g = 0; g < n; ++g) a[g] = cplx(gauss(rng), gauss(rng));
  const Eigen::MatrixXcd l = model.regular(a);
  Eigen::MatrixXcd m = l.adjoint() * l + 0.05 * Eigen::MatrixXcd::Identity(n, n);
  m /= m.trace().real();
  return make_state(Side::B, 0.5 * (m + m.adjoint()));
}

namespace {

void require_side(const DensityState& s, Side side, const char* what) {
  if (s.side != side) throw ContractError(std::string(what) + " lives on the wrong side");
}

double conjugate_exponent_checked(double p) {
  if (!(p >= 1.0 && p <= 2.0)) throw DomainError("relative exponent must lie in [1, 2]");
  return sp::conjugate_exponent(p);
}

double inverse(double q) { return std::isinf(q) ? 0.0 : 1.0 / q; }

Eigen::VectorXcd diag_power(const DensityState& s, double t) {
  return sp::psd_power(s.density, t).diagonal();
}

}  // namespace

Eigen::MatrixXcd relative_fourier(const GroupModel& model, const Eigen::VectorXcd& x, double p,
                                  const DensityState& phi, const DensityState& psi) {
  require_side(phi, Side::A, "phi");
  require_side(psi, Side::B, "psi");
  const double q = conjugate_exponent_checked(p);
  const Eigen::VectorXcd weighted = x.cwiseProduct(diag_power(phi, 0.5));
  const Eigen::MatrixXcd f = model.fourier_operator(weighted);
  const double s = inverse(q) - 0.5;
  if (s == 0.0) return f;
  return f * sp::psd_power(psi.density, s);
}

double rqhy_constant(const GroupModel& model, double p, const DensityState& phi, const DensityState& psi) {
  require_side(phi, Side::A, "phi");
  require_side(psi, Side::B, "psi");
  const double q = conjugate_exponent_checked(p);
  const double a = sp::schatten_norm(sp::psd_power(psi.density, inverse(q) - 0.5), kInf);
  const double b = sp::schatten_norm(model.fourier_operator(diag_power(phi, 0.5 - 1.0 / p)), 1.0);
  return std::pow(model.delta(), -2.0 / p) * a * b;
}

double rqhy_margin(const GroupModel& model, const Eigen::VectorXcd& x, double p, const DensityState& phi,
                   const DensityState& psi) {
  const double q = conjugate_exponent_checked(p);
  const double rhs = rqhy_constant(model, p, phi, psi) * model.norm_a(x.cwiseProduct(diag_power(phi, 1.0 / p)), p);
  return rhs - model.norm_b(relative_fourier(model, x, p, phi, psi), q);
}

double relative_entropy(const DensityState& omega, const DensityState& phi) {
  if (omega.side != phi.side) throw ContractError("relative entropy of states on different sides");
  const sp::HermitianSpectrum ps = sp::hermitian_eig(phi.density);
  const double top = std::max(ps.values.maxCoeff(), 0.0);
  // Support check: ω must vanish on the kernel of φ.
  Eigen::VectorXd log_phi(ps.values.size());
  for (Eigen::Index k = 0; k < ps.values.size(); ++k) {
    const double l = ps.values[k];
    if (l <= kSupportRelativeTolerance * top) {
      const double leak = (ps.vectors.col(k).adjoint() * omega.density * ps.vectors.col(k))(0, 0).real();
      if (leak > kFaithfulThreshold) return kInf;
      log_phi[k] = 0.0;
    } else {
      log_phi[k] = std::log(l);
    }
  }
  const Eigen::MatrixXcd lp = ps.vectors * log_phi.cast<cplx>().asDiagonal() * ps.vectors.adjoint();
  const double self = -sp::von_neumann_sum(sp::hermitian_eig(omega.density).values);
  return self - (omega.density * lp).trace().real();
}

DensityState hat_state(const GroupModel& model, const DensityState& omega) {
  require_side(omega, Side::A, "omega");
  const Eigen::MatrixXcd f = model.fourier_operator(diag_power(omega, 0.5));
  Eigen::MatrixXcd d = f.adjoint() * f;
  d = 0.5 * (d + d.adjoint());
  return make_state(Side::B, std::move(d));
}

double req_up_kink(const GroupModel& model, const DensityState& phi) {
  require_side(phi, Side::A, "phi");
  const auto n = static_cast<Eigen::Index>(model.order());
  const Eigen::MatrixXcd y = model.fourier_operator(sp::pd_log(phi.density).diagonal());
  const Eigen::MatrixXcd e = model.regular(Eigen::VectorXcd::Constant(n, 1.0 / static_cast<double>(n)));
  const Eigen::MatrixXcd perp = Eigen::MatrixXcd::Identity(n, n) - e;
  return sp::schatten_norm(perp * y * perp, 1.0) / model.delta();
}

ReqUpReport req_up_check(const GroupModel& model, const DensityState& omega, const DensityState& phi,
                         const DensityState& psi) {
  require_side(omega, Side::A, "omega");
  require_side(phi, Side::A, "phi");
  require_side(psi, Side::B, "psi");
  ReqUpReport r;
  r.relative_entropy = relative_entropy(omega, phi);
  r.hat_relative_entropy = relative_entropy(hat_state(model, omega), psi);
  r.lhs = r.relative_entropy + r.hat_relative_entropy;
  const double d2 = model.delta() * model.delta();
  const double psi_inv = sp::schatten_norm(sp::psd_power(psi.density, -1.0), kInf);
  r.rhs = std::log(psi_inv) - sp::pd_log(phi.density).trace().real() / d2 - 2.0 * std::log(model.delta());
  r.kink = req_up_kink(model, phi);
  r.margin = r.rhs - r.lhs;
  r.corrected_margin = r.rhs + r.kink - r.lhs;
  return r;
}

double f_curve(const GroupModel& model, const DensityState& omega, const DensityState& phi,
               const DensityState& psi, double p) {
  const double q = conjugate_exponent_checked(p);
  const DensityState hat = hat_state(model, omega);
  Eigen::MatrixXcd left = sp::psd_power(hat.density, 0.5);
  const double s = inverse(q) - 0.5;
  if (s != 0.0) left = left * sp::psd_power(psi.density, s);
  const Eigen::VectorXcd right = diag_power(omega, 0.5).cwiseProduct(diag_power(phi, 1.0 / p - 0.5));
  return model.norm_b(left, q) - rqhy_constant(model, p, phi, psi) * model.norm_a(right, p);
}

DerivativeReport derivative_check(const GroupModel& model, const DensityState& omega, const DensityState& phi,
                                  const DensityState& psi) {
  DerivativeReport r;
  r.f_at_2 = f_curve(model, omega, phi, psi, 2.0);
  auto one_sided = [&](double h) {
    return (3.0 * r.f_at_2 - 4.0 * f_curve(model, omega, phi, psi, 2.0 - h) +
            f_curve(model, omega, phi, psi, 2.0 - 2.0 * h)) / (2.0 * h);
  };
  const double coarse = one_sided(r.step_sizes[0]);
  const double fine = one_sided(r.step_sizes[1]);
  const double ratio2 = std::pow(r.step_sizes[0] / r.step_sizes[1], 2);
  r.fd_value = (ratio2 * fine - coarse) / (ratio2 - 1.0);

  const double d = model.delta();
  const double s = relative_entropy(omega, phi);
  const double s_hat = relative_entropy(hat_state(model, omega), psi);
  const double psi_inv = sp::schatten_norm(sp::psd_power(psi.density, -1.0), kInf);
  const double k_literal =
      0.5 * std::log(d) - 0.25 * std::log(psi_inv) + sp::pd_log(phi.density).trace().real() / (4.0 * d * d);
  const double kink = req_up_kink(model, phi) / 4.0;
  r.literal_value = -s / 4.0 - s_hat / 4.0 - k_literal;
  r.analytic_value = r.literal_value + kink;
  r.abs_gap = std::abs(r.fd_value - r.analytic_value);
  return r;
}

double group_qup1(const GroupModel& model, const Eigen::VectorXcd& x) {
  const double n2 = x.squaredNorm();
  Eigen::VectorXd a(x.size());
  for (Eigen::Index g = 0; g < x.size(); ++g) a[g] = std::norm(x[g]);
  const Eigen::MatrixXcd f = model.fourier_operator(x);
  const double hb = sp::von_neumann_sum(sp::hermitian_eig(f.adjoint() * f).values);
  const double tail = n2 > 0.0 ? 2.0 * n2 * std::log(n2) : 0.0;
  return sp::von_neumann_sum(a) + hb + tail - n2 * std::log(model.delta() * model.delta());
}

double group_qup2(const GroupModel& model, const Eigen::VectorXcd& x) {
  return model.support_a(x) * model.support_b(model.fourier_operator(x)) / (model.delta() * model.delta());
}

double hausdorff_young_ratio(const GroupModel& model, const Eigen::VectorXcd& x, double p, double q) {
  return model.norm_b(model.fourier_operator(x), q) / model.norm_a(x, p);
}

Eigen::VectorXcd chirp(std::size_t n) {
  Eigen::VectorXcd u(static_cast<Eigen::Index>(n));
  const double scale = (n % 2 == 0 ? 1.0 : 2.0) * std::numbers::pi / static_cast<double>(n);
  for (std::size_t g = 0; g < n; ++g) {
    const double g2 = static_cast<double>((g * g) % (2 * n));
    u[static_cast<Eigen::Index>(g)] = std::polar(1.0, scale * g2);
  }
  return u;
}

}  // namespace qfa
