#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "qfa/algebra.hpp"
#include "qfa/errors.hpp"
#include "qfa/inequality.hpp"

using namespace qfa;
using qfa::test::load_fixture;

TEST_CASE("unit element is the QUP equality case") {
  for (const char* name : {"z2.json", "fibonacci.json", "rank7_paper.json"}) {
    const auto probe = extremizer_probe(load_fixture(name));
    REQUIRE(probe.front().candidate == "x0");
    CHECK(std::abs(probe.front().qup1) <= 1e-9);
    CHECK(std::abs(probe.front().qup2 - 1.0) <= 1e-9);
    CHECK(probe.front().qup1_equality);
    CHECK(probe.front().qup2_equality);
  }
}

TEST_CASE("A-side unit has QUP-2 product at least one") {
  const auto alg = FusionAlgebra::create(load_fixture("rank7_paper.json"));
  const AlgebraElement u = alg->unit(Side::A);
  CHECK(support(u) == doctest::Approx(210.0));
  CHECK(support(fourier(u)) == doctest::Approx(1.0 / 210.0));
  CHECK(qup2_product(u) >= 1.0 - 1e-9);
}

TEST_CASE("QSP on the rank-7 fixture, seed 42") {
  const CheckReport r = run_check(load_fixture("rank7_paper.json"), InequalityId::QSP, 1000, 42);
  CHECK(r.samples == 1000);
  CHECK(r.worst_margin >= -1e-12);
}

TEST_CASE("QHY at p = 2 is Plancherel equality") {
  ExponentGrid grid;
  grid.p_values = {2.0};
  const CheckReport r = run_check(load_fixture("fibonacci.json"), InequalityId::QHY, 200, 5, grid);
  CHECK(std::abs(r.worst_margin) <= 1e-10);
}

TEST_CASE("standard suite has no false alarms") {
  for (const char* name : {"z2.json", "z5.json", "fibonacci.json", "rank7_paper.json"}) {
    const FusionRing ring = load_fixture(name);
    for (InequalityId id : kAllInequalities) {
      const CheckReport r = run_check(ring, id, 300, 1);
      const double tol = id == InequalityId::Plancherel ? 1e-10 : 1e-8;
      CHECK_MESSAGE(r.worst_margin >= -tol, name << " " << inequality_name(id) << " " << r.worst_margin);
    }
  }
}

TEST_CASE("reports are deterministic") {
  const FusionRing ring = load_fixture("rank7_paper.json");
  for (InequalityId id : kAllInequalities) {
    const CheckReport a = run_check(ring, id, 50, 99);
    const CheckReport b = run_check(ring, id, 50, 99);
    CHECK(a.worst_margin == b.worst_margin);
    CHECK(a.worst_sample == b.worst_sample);
    CHECK(a.witness == b.witness);
  }
}

TEST_CASE("witness round trip reproduces the worst margin") {
  for (const char* name : {"fibonacci.json", "rank7_paper.json"}) {
    const FusionRing ring = load_fixture(name);
    for (InequalityId id : kAllInequalities) {
      const CheckReport r = run_check(ring, id, 100, 3);
      REQUIRE(r.witness.has_value());
      CHECK(std::abs(witness_margin(ring, id, *r.witness) - r.worst_margin) <= 1e-12);
    }
  }
}

TEST_CASE("exponent legality") {
  ExponentGrid bad;
  bad.p_values = {2.5};
  CHECK_THROWS_AS(bad.hausdorff_young_pairs(), DomainError);
  ExponentGrid young;
  young.young = {{1.5, 1.5, 2.0}};
  CHECK_THROWS_AS(young.young_triples(), DomainError);
  young.young = {{1.5, 1.5, 3.0}};
  CHECK(young.young_triples().size() == 1);
  for (const auto& [p, q, r] : ExponentGrid{}.young_triples()) {
    CHECK(std::abs(1.0 / p + 1.0 / q - 1.0 - 1.0 / r) < 1e-12);
  }
}

TEST_CASE("empty sample set") {
  const CheckReport r = run_check(fibonacci_ring(), InequalityId::QUP1, 0, 0);
  CHECK(std::isnan(r.worst_margin));
  CHECK_FALSE(r.witness.has_value());
}

TEST_CASE("inequality names round trip") {
  for (InequalityId id : kAllInequalities) CHECK(parse_inequality(inequality_name(id)) == id);
  CHECK_THROWS_AS(parse_inequality("QXY"), ValueError);
}
