#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "qfa/algebra.hpp"
#include "qfa/errors.hpp"
#include "qfa/inequality.hpp"
#include "qfa/random.hpp"

using namespace qfa;
using qfa::test::load_fixture;

namespace {

const double phi = std::numbers::phi;

std::shared_ptr<const FusionAlgebra> algebra_of(const std::string& fixture) {
  return FusionAlgebra::create(load_fixture(fixture));
}

Eigen::VectorXcd vec(std::initializer_list<cplx> xs) {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (cplx x : xs) v[i++] = x;
  return v;
}

AlgebraElement random_element(const FusionAlgebra& alg, Side side, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd c(static_cast<Eigen::Index>(alg.rank()));
  for (Eigen::Index j = 0; j < c.size(); ++j) c[j] = cplx(g(rng), g(rng));
  return alg.element(side, c);
}

double max_diff(const AlgebraElement& a, const AlgebraElement& b) {
  return (a.coeffs() - b.coeffs()).cwiseAbs().maxCoeff();
}

std::vector<std::shared_ptr<const FusionAlgebra>> small_algebras() {
  return {algebra_of("z2.json"), algebra_of("fibonacci.json"), algebra_of("z5.json"), algebra_of("rank7_paper.json"),
          FusionAlgebra::create(qfa::test::group_ring(FiniteGroup::symmetric3()))};
}

}  // namespace

TEST_CASE("products on the basis") {
  const auto z2 = algebra_of("z2.json");
  CHECK(max_diff(multiply(z2->basis(Side::B, 1), z2->basis(Side::B, 1)), z2->basis(Side::B, 0)) == 0.0);

  const auto fib = algebra_of("fibonacci.json");
  const AlgebraElement x1 = fib->basis(Side::A, 1);
  CHECK(max_diff(multiply(x1, x1), x1 * (1.0 / phi)) < 1e-15);

  const auto r7 = algebra_of("rank7_paper.json");
  const AlgebraElement x = r7->element(Side::B, vec({1, 0, 0, 0, 1, -3, 2}));
  CHECK(max_diff(multiply(x, x), x * 15.0) == 0.0);
  CHECK(max_diff(adjoint(x), x) == 0.0);
}

TEST_CASE("adjoint") {
  const auto z2 = algebra_of("z2.json");
  const cplx i(0.0, 1.0);
  CHECK(max_diff(adjoint(z2->element(Side::A, vec({i, 1}))), z2->element(Side::A, vec({-i, 1}))) == 0.0);
  CHECK(max_diff(adjoint(z2->element(Side::B, vec({i, 1}))), z2->element(Side::B, vec({-i, 1}))) == 0.0);

  const auto z3 = FusionAlgebra::create(cyclic_group_ring(3));
  REQUIRE(z3->ring().star(1) == 2);
  CHECK(max_diff(adjoint(z3->element(Side::B, vec({0, i, 0}))), z3->element(Side::B, vec({0, 0, -i}))) == 0.0);
}

TEST_CASE("fourier retags coefficients") {
  const auto r7 = algebra_of("rank7_paper.json");
  std::mt19937_64 rng = sample_rng(3, 0);
  const AlgebraElement a = random_element(*r7, Side::A, rng);
  const AlgebraElement b = fourier(a);
  CHECK(b.side() == Side::B);
  CHECK(b.coeffs() == a.coeffs());
  CHECK(inverse_fourier(b).coeffs() == a.coeffs());
  const AlgebraElement u = fourier(r7->unit(Side::A));
  for (std::size_t j = 0; j < 7; ++j) CHECK(u[j] == cplx(r7->dim(j)));
  CHECK_THROWS_AS(fourier(b), ContractError);
}

TEST_CASE("convolution") {
  const auto z2 = algebra_of("z2.json");
  CHECK(max_diff(convolve(z2->basis(Side::A, 1), z2->basis(Side::A, 1)), z2->basis(Side::A, 0)) == 0.0);
  const auto fib = algebra_of("fibonacci.json");
  const AlgebraElement x1 = fib->basis(Side::B, 1);
  CHECK(max_diff(convolve(x1, x1), x1 * (1.0 / phi)) < 1e-15);
  CHECK_THROWS_AS(convolve(x1, fib->basis(Side::A, 1)), ContractError);
  CHECK_THROWS_AS(multiply(x1, fib->basis(Side::A, 1)), ContractError);
}

TEST_CASE("traces") {
  const auto r7 = algebra_of("rank7_paper.json");
  CHECK(trace(r7->basis(Side::B, 0)) == cplx(1.0));
  CHECK(std::abs(trace(r7->unit(Side::A)) - 210.0) < 1e-9);
  const auto fib = algebra_of("fibonacci.json");
  CHECK(std::abs(trace(fib->basis(Side::A, 1)) - phi) < 1e-14);
}

TEST_CASE("norms") {
  const auto fib = algebra_of("fibonacci.json");
  for (double p : {1.0, 1.5, 2.0, 3.0, kInf}) CHECK(norm_p(fib->basis(Side::A, 0), p) == doctest::Approx(1.0));
  CHECK(norm_p(fib->basis(Side::A, 1), 1.0) == doctest::Approx(phi).epsilon(1e-14));
  CHECK(norm_p(fib->basis(Side::B, 1), 1.0) == doctest::Approx(2.0 * phi / (2.0 + phi)).epsilon(1e-12));
  CHECK(std::abs(norm_p(fib->basis(Side::B, 1), 1.0) - 0.89443) < 1e-5);
  CHECK_THROWS_AS(norm_p(fib->basis(Side::A, 1), 0.5), DomainError);
}

TEST_CASE("positivity") {
  const auto r7 = algebra_of("rank7_paper.json");
  const Positivity u = is_positive(r7->unit(Side::A));
  CHECK(u.positive);
  CHECK(u.margin == doctest::Approx(1.0));
  CHECK(is_positive(r7->element(Side::B, vec({1, 0, 0, 0, 1, -3, 2}))).positive);

  const auto z2 = algebra_of("z2.json");
  const Positivity n = is_positive(z2->element(Side::A, vec({1, -1})));
  CHECK_FALSE(n.positive);
  CHECK(n.margin == doctest::Approx(-1.0));
}

TEST_CASE("entropy and support") {
  const auto r7 = algebra_of("rank7_paper.json");
  for (Side s : {Side::A, Side::B}) {
    CHECK(std::abs(entropy(r7->basis(s, 0))) < 1e-14);
    CHECK(support(r7->basis(s, 0)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(support(r7->zero(s)), DomainError);
  }
  CHECK(support(r7->unit(Side::A)) == doctest::Approx(210.0));
}

TEST_CASE("Plancherel on 1000 samples per ring") {
  for (const auto& alg : small_algebras()) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 1000; ++i) {
      std::mt19937_64 rng = sample_rng(17, i);
      const AlgebraElement a = random_element(*alg, Side::A, rng);
      worst = std::max(worst, std::abs(norm_p(fourier(a), 2.0) - norm_p(a, 2.0)) / norm_p(a, 2.0));
    }
    CHECK(worst <= 1e-10);
  }
}

TEST_CASE("Hoelder consistency on both sides") {
  for (const auto& alg : small_algebras()) {
    for (Side side : {Side::A, Side::B}) {
      for (std::size_t i = 0; i < 200; ++i) {
        std::mt19937_64 rng = sample_rng(23, i);
        const AlgebraElement a = random_element(*alg, side, rng);
        const AlgebraElement b = random_element(*alg, side, rng);
        for (double p : {1.0, 1.25, 1.5, 2.0, 3.0}) {
          const double q = spectral::conjugate_exponent(p);
          CHECK(std::abs(trace(multiply(a, b))) <= norm_p(a, p) * norm_p(b, q) + 1e-8);
        }
      }
    }
  }
}

TEST_CASE("norm duality on rank <= 3 rings") {
  // The A-side maximizer is b = u|a|^{p-1} normalized; random unit-q-norm elements never beat it.
  for (const auto& alg : {algebra_of("z2.json"), algebra_of("fibonacci.json"),
                          FusionAlgebra::create(cyclic_group_ring(3))}) {
    for (std::size_t i = 0; i < 20; ++i) {
      std::mt19937_64 rng = sample_rng(29, i);
      const AlgebraElement a = random_element(*alg, Side::A, rng);
      for (double p : {1.25, 1.5, 2.0, 3.0}) {
        const double q = spectral::conjugate_exponent(p);
        const double np = norm_p(a, p);
        Eigen::VectorXcd c(a.coeffs().size());
        for (Eigen::Index j = 0; j < c.size(); ++j) {
          const double d = alg->dim(static_cast<std::size_t>(j));
          const cplx f = a.coeffs()[j] / d;
          c[j] = d * std::polar(std::pow(std::abs(f), p - 1.0), std::arg(f)) / std::pow(np, p - 1.0);
        }
        const AlgebraElement best = alg->element(Side::A, c);
        CHECK(norm_p(best, q) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(std::abs(trace(multiply(adjoint(best), a))) - np) <= 1e-6);

        double sampled = 0.0;
        for (int s = 0; s < 200; ++s) {
          AlgebraElement b = random_element(*alg, Side::A, rng);
          b = b * (1.0 / norm_p(b, q));
          sampled = std::max(sampled, std::abs(trace(multiply(adjoint(b), a))));
        }
        CHECK(sampled <= np + 1e-10);
      }
    }
  }
}

TEST_CASE("B-side trace is tracial, adjoint is involutive and anti-multiplicative") {
  for (const auto& alg : small_algebras()) {
    for (std::size_t i = 0; i < 50; ++i) {
      std::mt19937_64 rng = sample_rng(31, i);
      const AlgebraElement a = random_element(*alg, Side::B, rng);
      const AlgebraElement b = random_element(*alg, Side::B, rng);
      CHECK(std::abs(trace(multiply(a, b)) - trace(multiply(b, a))) <= 1e-10);
      CHECK(max_diff(adjoint(adjoint(a)), a) == 0.0);
      CHECK(max_diff(adjoint(multiply(a, b)), multiply(adjoint(b), adjoint(a))) <= 1e-12);
    }
  }
}

TEST_CASE("left representation is multiplicative") {
  const auto alg = FusionAlgebra::create(qfa::test::group_ring(FiniteGroup::symmetric3()));
  std::mt19937_64 rng = sample_rng(37, 0);
  const AlgebraElement a = random_element(*alg, Side::B, rng);
  const AlgebraElement b = random_element(*alg, Side::B, rng);
  CHECK((multiply(a, b).left_representation() - a.left_representation() * b.left_representation()).norm() < 1e-12);
}

TEST_CASE("element JSON round trip") {
  const auto r7 = algebra_of("rank7_paper.json");
  std::mt19937_64 rng = sample_rng(41, 0);
  const AlgebraElement a = random_element(*r7, Side::B, rng);
  const AlgebraElement back = element_from_json(r7, element_to_json(a));
  CHECK(back.side() == Side::B);
  CHECK(back.coeffs() == a.coeffs());
  CHECK_THROWS_AS(element_from_json(r7, R"({"side": "A", "coeffs": [1, 2]})"), ShapeError);
}
