#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "qfa/entangle.hpp"
#include "qfa/errors.hpp"
#include "qfa/group.hpp"
#include "qfa/group_model.hpp"
#include "qfa/random.hpp"

using namespace qfa;

namespace {

Eigen::VectorXcd random_function(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd f(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = cplx(g(rng), g(rng));
  return f;
}

std::vector<FiniteGroup> calibration_groups() {
  return {FiniteGroup::cyclic(4), FiniteGroup::cyclic(6), FiniteGroup::cyclic(12), FiniteGroup::symmetric3()};
}

double inv(double q) { return std::isinf(q) ? 0.0 : 1.0 / q; }

}  // namespace

// ---------------------------------------------------------------- groups

TEST_CASE("finite group constructors") {
  const FiniteGroup z12 = FiniteGroup::cyclic(12);
  CHECK(z12.order() == 12);
  CHECK(z12.is_abelian());
  CHECK(z12.subgroups().size() == 6);
  CHECK(z12.linear_characters().size() == 12);
  CHECK(z12.exponent() == 12);

  const FiniteGroup s3 = FiniteGroup::symmetric3();
  CHECK_FALSE(s3.is_abelian());
  CHECK(s3.subgroups().size() == 6);
  CHECK(s3.linear_characters().size() == 2);
  for (std::size_t g = 0; g < 6; ++g) CHECK(s3.mul(g, s3.inv(g)) == 0);

  const FiniteGroup z2z4 = FiniteGroup::abelian({2, 4});
  CHECK(z2z4.order() == 8);
  CHECK(z2z4.exponent() == 4);
  CHECK(z2z4.subgroups().size() == 8);
}

TEST_CASE("group parsing and builtin names") {
  CHECK(parse_group(R"({"abelian": [3, 2]})").order() == 6);
  CHECK(parse_group(R"({"table": [[0, 1], [1, 0]]})").order() == 2);
  CHECK_THROWS_AS(parse_group(R"({"table": [[0, 1], [0, 1]]})"), ValueError);
  CHECK_THROWS_AS(parse_group(R"({"table": [[0, 1], [1]]})"), ShapeError);
  CHECK_THROWS_AS(parse_group("{\"abelian\": [2,"), ParseError);
  CHECK(group_from_name("Z/8").order() == 8);
  CHECK(group_from_name("Z/2 x Z/4").order() == 8);
  CHECK(group_from_name("S3").order() == 6);
  CHECK_THROWS_AS(group_from_name("Q8"), ValueError);
}

// ---------------------------------------------------------------- Fourier calibration

TEST_CASE("uniform and point mass are Fourier dual") {
  const GroupModel z2(FiniteGroup::cyclic(2));
  // The constant function goes to δ times the trace-one projection (1/n)Σ λ_g.
  const Eigen::MatrixXcd u = z2.fourier_operator(Eigen::VectorXcd::Ones(2));
  const Eigen::MatrixXcd p = u / z2.delta();
  CHECK((p * p - p).norm() < 1e-15);
  CHECK(std::abs(p.trace() - 1.0) < 1e-15);
  // The point mass goes to a multiple of the unit.
  const Eigen::MatrixXcd e = z2.fourier_operator(Eigen::VectorXcd::Unit(2, 0));
  CHECK((e - Eigen::MatrixXcd::Identity(2, 2) / z2.delta()).norm() < 1e-15);
}

TEST_CASE("Plancherel on 1000 functions over Z/8") {
  const GroupModel m(FiniteGroup::cyclic(8));
  double worst = 0.0;
  for (std::size_t i = 0; i < 1000; ++i) {
    std::mt19937_64 rng = sample_rng(101, i);
    const Eigen::VectorXcd f = random_function(8, rng);
    worst = std::max(worst, std::abs(m.norm_b(m.fourier_operator(f), 2.0) - m.norm_a(f, 2.0)));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("calibration triple on every subgroup") {
  for (const FiniteGroup& g : calibration_groups()) {
    const GroupModel m(g);
    for (const auto& h : g.subgroups()) {
      const Eigen::VectorXcd f = m.biprojection(h);
      const Eigen::MatrixXcd b = m.fourier_operator(f);
      const double c = static_cast<double>(h.size()) / m.delta();
      CHECK((b * b - c * b).norm() <= 1e-10);
      CHECK((b - b.adjoint()).norm() <= 1e-12);
      CHECK(std::abs(group_qup2(m, f) - 1.0) <= 1e-9);
      CHECK(m.support_a(f) * m.support_b(b) == doctest::Approx(static_cast<double>(g.order())));
      CHECK((m.subgroup_projection(h) - b / c).norm() <= 1e-10);
    }
  }
}

TEST_CASE("Fourier has period four") {
  const GroupModel m(FiniteGroup::symmetric3());
  std::mt19937_64 rng = sample_rng(103, 0);
  const Eigen::VectorXcd f = random_function(6, rng);
  Eigen::VectorXcd x = f;
  for (int k = 0; k < 2; ++k) x = m.rotate_b_to_a(m.dft(x));
  CHECK((x - f).norm() <= 1e-10);
  CHECK((m.inverse_dft(m.dft(f)) - f).norm() <= 1e-14);
}

TEST_CASE("trivial subgroups and domain errors") {
  const GroupModel m(FiniteGroup::cyclic(6));
  CHECK(m.biprojection({0}) == Eigen::VectorXcd::Unit(6, 0));
  CHECK(m.biprojection({0, 1, 2, 3, 4, 5}) == Eigen::VectorXcd::Ones(6));
  CHECK_THROWS_AS(m.biprojection({0, 1}), DomainError);
}

TEST_CASE("bishifts meet the extremal constant") {
  const FiniteGroup z6 = FiniteGroup::cyclic(6);
  const GroupModel m(z6);
  const std::vector<std::size_t> h = {0, 3};
  const double d = m.delta();
  for (const auto& chi : z6.linear_characters()) {
    for (std::size_t g = 0; g < 6; ++g) {
      const Eigen::VectorXcd x = m.bishift(h, g, chi);
      for (double p : {1.0, 1.5, 2.0}) {
        const double q = spectral::conjugate_exponent(p);
        CHECK(std::abs(hausdorff_young_ratio(m, x, p, q) - std::pow(d, -1.0 + 2.0 * inv(q))) <= 1e-9);
      }
    }
  }
}

TEST_CASE("boundary ratios for point masses, unimodular functions and chirps") {
  const std::vector<double> exps = {1.0, 1.25, 1.5, 2.0, 4.0, kInf};
  for (const FiniteGroup& g : calibration_groups()) {
    const GroupModel m(g);
    const double d = m.delta();
    const Eigen::VectorXcd point = Eigen::VectorXcd::Unit(static_cast<Eigen::Index>(g.order()), 0);
    std::mt19937_64 rng = sample_rng(107, g.order());
    Eigen::VectorXcd u = random_function(g.order(), rng);
    u = u.cwiseQuotient(u.cwiseAbs().cast<cplx>());
    for (double p : exps) {
      CHECK(std::abs(hausdorff_young_ratio(m, u, p, 2.0) - std::pow(d, 1.0 - 2.0 * inv(p))) <= 1e-8);
      for (double q : exps) {
        CHECK(std::abs(hausdorff_young_ratio(m, point, p, q) - std::pow(d, -1.0 + 2.0 * inv(q))) <= 1e-8);
      }
    }
    if (g.is_abelian() && g.abelian_factors().size() == 1) {
      const Eigen::VectorXcd c = chirp(g.order());
      for (double p : exps)
        for (double q : exps)
          CHECK(std::abs(hausdorff_young_ratio(m, c, p, q) - std::pow(d, 2.0 * inv(q) - 2.0 * inv(p))) <= 1e-8);
    }
  }
}

// ---------------------------------------------------------------- states

TEST_CASE("states validate positivity and trace") {
  CHECK_THROWS_AS(state_from_function(Eigen::Vector2cd(0.5, 0.6)), ValueError);
  CHECK_THROWS_AS(state_from_function(Eigen::Vector2cd(1.5, -0.5)), ValueError);
  const DensityState s = state_from_function(Eigen::Vector2cd(1.0, 0.0));
  CHECK_FALSE(s.faithful);
  const GroupModel m(FiniteGroup::cyclic(5));
  CHECK(trace_state(m, Side::A).faithful);
  CHECK(trace_state(m, Side::B).faithful);
}

TEST_CASE("relative entropy") {
  const DensityState w = state_from_function(Eigen::Vector2cd(0.9, 0.1));
  const DensityState u = state_from_function(Eigen::Vector2cd(0.5, 0.5));
  const double oracle = 0.9 * std::log(0.9 / 0.5) + 0.1 * std::log(0.1 / 0.5);
  CHECK(std::abs(relative_entropy(w, u) - oracle) <= 1e-12);
  CHECK(relative_entropy(w, w) == doctest::Approx(0.0));
  const DensityState e0 = state_from_function(Eigen::Vector2cd(1.0, 0.0));
  const DensityState e1 = state_from_function(Eigen::Vector2cd(0.0, 1.0));
  CHECK(std::isinf(relative_entropy(e0, e1)));
}

TEST_CASE("relative Fourier transform") {
  const GroupModel m(FiniteGroup::cyclic(8));
  for (std::size_t i = 0; i < 50; ++i) {
    std::mt19937_64 rng = sample_rng(109, i);
    const DensityState phi = random_state(m, Side::A, rng);
    const DensityState psi = random_state(m, Side::B, rng);
    const Eigen::VectorXcd x = random_function(8, rng);
    const Eigen::VectorXcd xs = x.cwiseProduct(phi.density.diagonal().cwiseSqrt());
    CHECK(std::abs(m.norm_b(relative_fourier(m, x, 2.0, phi, psi), 2.0) - m.norm_a(xs, 2.0)) <= 1e-10);
    CHECK(std::abs(rqhy_constant(m, 2.0, phi, psi) - 1.0) <= 1e-10);
  }

  // Trace states: densities are scalars, so the relative transform is a multiple of the plain one.
  const GroupModel z4(FiniteGroup::cyclic(4));
  const DensityState ta = trace_state(z4, Side::A);
  const DensityState tb = trace_state(z4, Side::B);
  std::mt19937_64 rng = sample_rng(113, 0);
  const Eigen::VectorXcd x = random_function(4, rng);
  for (double p : {1.0, 1.25, 1.5, 2.0}) {
    const double q = spectral::conjugate_exponent(p);
    const double scale = std::pow(0.25, 0.5) * std::pow(0.25, inv(q) - 0.5);
    CHECK((relative_fourier(z4, x, p, ta, tb) - scale * z4.fourier_operator(x)).norm() <= 1e-12);
    CHECK(std::abs(rqhy_constant(z4, p, ta, tb) - std::pow(z4.delta(), 1.0 - 2.0 * inv(q))) <= 1e-10);
  }
  CHECK_THROWS_AS(relative_fourier(z4, x, 2.5, ta, tb), DomainError);
}

TEST_CASE("RQHY on random faithful states") {
  for (const FiniteGroup& g : {FiniteGroup::cyclic(8), FiniteGroup::symmetric3()}) {
    const GroupModel m(g);
    for (std::size_t i = 0; i < 200; ++i) {
      std::mt19937_64 rng = sample_rng(127, i);
      const double p = std::uniform_real_distribution<double>(1.0, 2.0)(rng);
      const DensityState phi = random_state(m, Side::A, rng);
      const DensityState psi = random_state(m, Side::B, rng);
      const Eigen::VectorXcd x = random_function(g.order(), rng);
      CHECK(std::isfinite(rqhy_constant(m, p, phi, psi)));
      CHECK(rqhy_margin(m, x, p, phi, psi) >= -1e-8);
    }
  }
}

TEST_CASE("hat state") {
  const GroupModel m(FiniteGroup::cyclic(8));
  const DensityState hp = hat_state(m, point_mass_state(m));
  CHECK((hp.density - trace_state(m, Side::B).density).norm() <= 1e-12);
  const DensityState ht = hat_state(m, trace_state(m, Side::A));
  CHECK(m.support_b(ht.density) == doctest::Approx(1.0));

  for (std::size_t i = 0; i < 500; ++i) {
    std::mt19937_64 rng = sample_rng(131, i);
    const DensityState w = random_state(m, Side::A, rng);
    CHECK(std::abs(hat_state(m, w).density.trace() - 1.0) <= 1e-10);
  }

  // Bishifted biprojection states go to states supported on a projection of trace n/|H|.
  const FiniteGroup z6 = FiniteGroup::cyclic(6);
  const GroupModel m6(z6);
  for (const auto& h : z6.subgroups()) {
    for (const auto& chi : z6.linear_characters()) {
      const Eigen::VectorXcd x = m6.bishift(h, 1, chi);
      const DensityState w = state_from_function(x.cwiseAbs2().cast<cplx>() / static_cast<double>(h.size()));
      const DensityState hw = hat_state(m6, w);
      CHECK(m6.support_b(hw.density) == doctest::Approx(6.0 / static_cast<double>(h.size())));
      const double top = hw.density.selfadjointView<Eigen::Lower>().eigenvalues().maxCoeff();
      CHECK((hw.density * hw.density - top * hw.density).norm() <= 1e-10);
    }
  }
}

TEST_CASE("uncertainty bound with tracial weights") {
  const GroupModel z4(FiniteGroup::cyclic(4));
  const DensityState ta = trace_state(z4, Side::A);
  CHECK(req_up_check(z4, ta, ta, trace_state(z4, Side::B)).margin >= -1e-8);

  for (const FiniteGroup& g : {FiniteGroup::cyclic(8), FiniteGroup::symmetric3()}) {
    const GroupModel m(g);
    const DensityState tr = trace_state(m, Side::A);
    for (std::size_t i = 0; i < 100; ++i) {
      std::mt19937_64 rng = sample_rng(137, i);
      const DensityState w = random_state(m, Side::A, rng);
      const DensityState psi = random_state(m, Side::B, rng);
      const ReqUpReport r = req_up_check(m, w, tr, psi);
      CHECK(r.kink <= 1e-12);
      CHECK(r.margin >= -1e-8);
    }
  }
}

TEST_CASE("uncertainty bound needs the kink term for general weights") {
  // Point mass against a lopsided weight on Z/2: the bound without the kink fails.
  const GroupModel z2(FiniteGroup::cyclic(2));
  const DensityState w = point_mass_state(z2);
  const DensityState phi = state_from_function(Eigen::Vector2cd(0.1, 0.9));
  const ReqUpReport r = req_up_check(z2, w, phi, trace_state(z2, Side::B));
  CHECK(r.lhs == doctest::Approx(std::log(10.0)));
  CHECK(r.margin < -1.0);
  CHECK(r.corrected_margin >= -1e-8);

  for (const FiniteGroup& g : {FiniteGroup::cyclic(8), FiniteGroup::symmetric3()}) {
    const GroupModel m(g);
    for (std::size_t i = 0; i < 200; ++i) {
      std::mt19937_64 rng = sample_rng(139, i);
      const DensityState om = random_state(m, Side::A, rng);
      const DensityState ph = random_state(m, Side::A, rng);
      const DensityState ps = random_state(m, Side::B, rng);
      CHECK(req_up_check(m, om, ph, ps).corrected_margin >= -1e-8);
    }
  }
}

TEST_CASE("uncertainty margin is invariant under automorphisms") {
  // g -> 3g on Z/8.
  const FiniteGroup z8 = FiniteGroup::cyclic(8);
  std::vector<std::size_t> perm(8);
  for (std::size_t g = 0; g < 8; ++g) perm[g] = (3 * g) % 8;
  const FiniteGroup z8p = z8.relabeled(perm);
  const GroupModel m(z8), mp(z8p);
  Eigen::MatrixXd pm = Eigen::MatrixXd::Zero(8, 8);
  for (std::size_t g = 0; g < 8; ++g) pm(static_cast<Eigen::Index>(perm[g]), static_cast<Eigen::Index>(g)) = 1.0;
  const Eigen::MatrixXcd pc = pm.cast<cplx>();
  auto move = [&](const DensityState& s) { return make_state(s.side, pc * s.density * pc.adjoint()); };
  for (std::size_t i = 0; i < 20; ++i) {
    std::mt19937_64 rng = sample_rng(149, i);
    const DensityState om = random_state(m, Side::A, rng);
    const DensityState ph = random_state(m, Side::A, rng);
    const DensityState ps = random_state(m, Side::B, rng);
    const ReqUpReport a = req_up_check(m, om, ph, ps);
    const ReqUpReport b = req_up_check(mp, move(om), move(ph), move(ps));
    CHECK(std::abs(a.margin - b.margin) <= 1e-9);
    CHECK(std::abs(a.corrected_margin - b.corrected_margin) <= 1e-9);
  }
}

TEST_CASE("f curve and its left derivative at 2") {
  const GroupModel m(FiniteGroup::cyclic(8));
  for (std::size_t i = 0; i < 25; ++i) {
    std::mt19937_64 rng = sample_rng(151, i);
    const DensityState om = random_state(m, Side::A, rng);
    const DensityState ph = random_state(m, Side::A, rng);
    const DensityState ps = random_state(m, Side::B, rng);
    for (double p : {1.8, 1.9, 1.99}) CHECK(f_curve(m, om, ph, ps, p) <= 1e-8);
    const DerivativeReport d = derivative_check(m, om, ph, ps);
    CHECK(std::abs(d.f_at_2) <= 1e-10);
    CHECK(d.fd_value >= -1e-6);
    CHECK(d.abs_gap <= 1e-4);
    CHECK(d.step_sizes[0] == 1e-3);
    CHECK(d.step_sizes[1] == 1e-4);
  }
}

TEST_CASE("derivative assemblies agree for the trace weight") {
  for (const FiniteGroup& g : {FiniteGroup::cyclic(8), FiniteGroup::symmetric3()}) {
    const GroupModel m(g);
    for (std::size_t i = 0; i < 5; ++i) {
      std::mt19937_64 rng = sample_rng(157, i);
      const DensityState om = random_state(m, Side::A, rng);
      const DensityState ps = random_state(m, Side::B, rng);
      const DerivativeReport d = derivative_check(m, om, trace_state(m, Side::A), ps);
      CHECK(std::abs(d.analytic_value - d.literal_value) <= 1e-12);
      CHECK(d.abs_gap <= 1e-4);
    }
  }
}

TEST_CASE("group QUP-1 is nonnegative and vanishes on biprojections") {
  for (const FiniteGroup& g : calibration_groups()) {
    const GroupModel m(g);
    for (const auto& h : g.subgroups()) CHECK(std::abs(group_qup1(m, m.biprojection(h))) <= 1e-10);
    for (std::size_t i = 0; i < 100; ++i) {
      std::mt19937_64 rng = sample_rng(163, i);
      CHECK(group_qup1(m, random_function(g.order(), rng)) >= -1e-8);
    }
  }
}

// ---------------------------------------------------------------- entanglement

TEST_CASE("Bell state") {
  const QuditState bell = max_state(2, 2);
  CHECK(std::abs(bell.amplitudes[0] - std::sqrt(0.5)) < 1e-15);
  CHECK(std::abs(bell.amplitudes[3] - std::sqrt(0.5)) < 1e-15);
  CHECK(std::abs(entanglement_entropy(bell, {0}) - std::log(2.0)) <= 1e-10);
}

TEST_CASE("Max and product entropies") {
  for (std::size_t d = 2; d <= 5; ++d) {
    CHECK(std::abs(entanglement_entropy(max_state(2, d), {0}) - std::log(static_cast<double>(d))) <= 1e-10);
    CHECK(std::abs(entanglement_entropy(max_state(2, d), {1}) - std::log(static_cast<double>(d))) <= 1e-10);
    const GroupModel m(FiniteGroup::cyclic(d));
    const Eigen::VectorXcd x = Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(d), 1.0 / std::sqrt(double(d)));
    CHECK(group_qup1(m, x) >= -1e-10);
  }
  const QuditState prod = product_state({1, 0, 2}, 3);
  for (const std::vector<std::size_t>& cut : {std::vector<std::size_t>{0}, {1}, {0, 2}}) {
    CHECK(std::abs(entanglement_entropy(prod, cut)) <= 1e-12);
  }
  const QuditState m3 = max_state(3, 3);
  CHECK((apply_fourier(ghz_state(3, 3)).amplitudes - m3.amplitudes).norm() <= 1e-12);
  CHECK(std::abs(entanglement_entropy(m3, {0, 1}) - std::log(3.0)) <= 1e-10);
}

TEST_CASE("dimension cap") {
  CHECK_THROWS_AS(max_state(20, 5, 1 << 16), ResourceError);
  CHECK(checked_dimension(4, 4, 256) == 256);
  CHECK_THROWS_AS(checked_dimension(4, 4, 255), ResourceError);
  CHECK_THROWS_AS(entanglement_entropy(max_state(2, 2), {}), DomainError);
  CHECK_THROWS_AS(entanglement_entropy(max_state(2, 2), {0, 1}), DomainError);
  ::setenv("QFA_DIM_CAP", "100", 1);
  CHECK(dimension_cap() == 100);
  CHECK_THROWS_AS(max_state(3, 5), ResourceError);
  ::unsetenv("QFA_DIM_CAP");
  CHECK(dimension_cap() == kDefaultDimensionCap);
}
