#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "lamination/bratteli.hpp"

using namespace lamination;

namespace {

IncidenceMatrix mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  IncidenceMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

const IncidenceMatrix kGolden = mat2(1, 1, 1, 0);

BratteliDiagram golden_diagram() { return BratteliDiagram(2, {}, {kGolden}); }

// Independent oracle for the golden partial products: Fibonacci numbers from
// the plain recurrence, F(1) = F(2) = 1.
Int fibonacci(int n) {
  Int a = 0, b = 1;
  for (int i = 1; i < n; ++i) {
    Int t = a + b;
    a = b;
    b = t;
  }
  return n == 0 ? a : b;
}

}  // namespace

TEST_CASE("diagram construction validates input") {
  CHECK_THROWS_AS(BratteliDiagram(1, {}, {}), std::invalid_argument);
  CHECK_THROWS_AS(BratteliDiagram(2, {}, {}), std::invalid_argument);
  IncidenceMatrix bad(2, 3);
  bad.setZero();
  CHECK_THROWS_AS(BratteliDiagram(2, {bad}, {}), std::invalid_argument);
  CHECK_THROWS_AS(BratteliDiagram(2, {mat2(1, -1, 0, 1)}, {}), std::invalid_argument);
  CHECK_THROWS_AS(BratteliDiagram(3, {kGolden}, {}), std::invalid_argument);
}

TEST_CASE("matrix_at cycles prefix then period") {
  const IncidenceMatrix p1 = mat2(1, 0, 1, 1);
  const IncidenceMatrix q1 = mat2(1, 1, 1, 0);
  const IncidenceMatrix q2 = mat2(2, 1, 1, 1);
  const BratteliDiagram d(2, {p1}, {q1, q2});
  CHECK(d.distinct_levels() == 3);
  CHECK(d.matrix_at(1) == p1);
  CHECK(d.matrix_at(2) == q1);
  CHECK(d.matrix_at(3) == q2);
  CHECK(d.matrix_at(4) == q1);
  CHECK(d.matrix_at(5) == q2);
  CHECK(d.matrix_at(104) == q1);
  CHECK_THROWS_AS(d.matrix_at(0), std::invalid_argument);

  const BratteliDiagram finite(2, {p1, q1}, {});
  CHECK(finite.is_finite());
  CHECK(finite.matrix_at(2) == q1);
  CHECK_THROWS_AS(finite.matrix_at(3), IndexBeyondFiniteDiagram);
}

TEST_CASE("golden partial products are Fibonacci matrices") {
  const BratteliDiagram d = golden_diagram();
  const Mat<Int> p6 = partial_product(d, 6);
  CHECK(p6(0, 0) == 13);
  CHECK(p6(0, 1) == 8);
  CHECK(p6(1, 0) == 8);
  CHECK(p6(1, 1) == 5);

  // Far beyond 64-bit range; exact integers required.
  const Mat<Int> p120 = partial_product(d, 120);
  CHECK(p120(0, 0) == fibonacci(121));
  CHECK(p120(0, 1) == fibonacci(120));
  CHECK(p120(1, 0) == fibonacci(120));
  CHECK(p120(1, 1) == fibonacci(119));
  CHECK(p120(0, 0) > Int("1000000000000000000000000"));
}

TEST_CASE("check_unimodular passes the golden diagram at every level") {
  const UnimodularReport rep = check_unimodular(golden_diagram(), 20);
  CHECK(rep.overall);
  CHECK(rep.entries.size() == 20);
  for (const auto& e : rep.entries) {
    CHECK(e.pass);
    CHECK((e.determinant == 1 || e.determinant == -1));
  }
  CHECK(rep.entries.front().level == 1);

  // Default depth covers exactly the distinct levels.
  const UnimodularReport def = check_unimodular(golden_diagram());
  CHECK(def.entries.size() == 1);
}

TEST_CASE("check_unimodular reports a determinant-2 level") {
  const BratteliDiagram d(2, {kGolden, mat2(2, 1, 0, 1)}, {kGolden});
  const UnimodularReport rep = check_unimodular(d);
  CHECK_FALSE(rep.overall);
  CHECK(rep.entries[0].pass);
  CHECK_FALSE(rep.entries[1].pass);
  CHECK(rep.entries[1].level == 2);
  CHECK(rep.entries[1].determinant == 2);
  CHECK(rep.entries[2].pass);
}

TEST_CASE("unit increments of golden entries break unimodularity except (1,1)") {
  // Three of the four single-entry increments destroy |det| = 1.
  CHECK_FALSE(check_unimodular(BratteliDiagram(2, {}, {mat2(1, 2, 1, 0)})).overall);
  CHECK_FALSE(check_unimodular(BratteliDiagram(2, {}, {mat2(1, 1, 2, 0)})).overall);
  CHECK_FALSE(check_unimodular(BratteliDiagram(2, {}, {mat2(1, 1, 1, 1)})).overall);
  // Incrementing the top-left entry flips the determinant to -1: still
  // unimodular, so "any +1 breaks it" is not a law.
  const UnimodularReport rep = check_unimodular(BratteliDiagram(2, {}, {mat2(2, 1, 1, 0)}));
  CHECK(rep.overall);
  CHECK(rep.entries[0].determinant == -1);
}

TEST_CASE("cone diameters contract for the golden diagram") {
  const std::vector<double> d = cone_diameters(golden_diagram(), 64);
  REQUIRE(d.size() == 64);
  CHECK(std::isinf(d[0]));  // first matrix has a zero entry
  CHECK(std::isfinite(d[1]));
  for (std::size_t n = 2; n < d.size(); ++n) CHECK(d[n] <= d[n - 1] + 1e-12);
  CHECK(d.back() < 1e-10);
}

TEST_CASE("ergodicity verdicts") {
  CHECK(is_strictly_ergodic(golden_diagram()) == ErgodicityVerdict::StrictlyErgodic);

  const BratteliDiagram identity(2, {}, {mat2(1, 0, 0, 1)});
  CHECK(is_strictly_ergodic(identity) == ErgodicityVerdict::NotContracting);

  const BratteliDiagram swap(2, {}, {mat2(0, 2, 1, 0)});  // monomial, not identity
  CHECK(is_strictly_ergodic(swap) == ErgodicityVerdict::NotContracting);

  const BratteliDiagram shear(2, {}, {mat2(1, 1, 0, 1)});
  CHECK(is_strictly_ergodic(shear) == ErgodicityVerdict::Inconclusive);
  CHECK(is_strictly_ergodic(shear, 4096) == ErgodicityVerdict::Inconclusive);

  // A contracting prefix does not rescue a monomial period: the nested cones
  // stop shrinking after the prefix.
  const BratteliDiagram stalled(2, {kGolden, kGolden}, {mat2(1, 0, 0, 1)});
  CHECK(is_strictly_ergodic(stalled) == ErgodicityVerdict::NotContracting);
}

TEST_CASE("golden state vector hits the closed form") {
  const StateVector s = state_vector(golden_diagram());
  REQUIRE(s.lambda.size() == 2);
  const double l1 = (std::sqrt(5.0) - 1.0) / 2.0;
  const double l2 = (3.0 - std::sqrt(5.0)) / 2.0;
  CHECK(std::abs(s.lambda[0] - l1) < 1e-12);
  CHECK(std::abs(s.lambda[1] - l2) < 1e-12);
  CHECK(std::abs(s.lambda.sum() - 1.0) < 1e-15);
  CHECK(s.lambda.minCoeff() > 0.0);
  CHECK(s.tolerance_used == 1e-12);
  CHECK(s.depth_used >= 2);
}

TEST_CASE("squared-golden period has the same state vector") {
  // Power-iteration oracle: [[2,1],[1,1]] is the square of the golden matrix,
  // so the limit direction is identical.
  const BratteliDiagram d(2, {}, {mat2(2, 1, 1, 1)});
  const StateVector s = state_vector(d);
  CHECK(std::abs(s.lambda[0] - 0.6180339887498949) < 1e-12);
  CHECK(std::abs(s.lambda[1] - 0.3819660112501051) < 1e-12);
}

TEST_CASE("circulant rank-3 diagram has the uniform state vector") {
  IncidenceMatrix c(3, 3);
  c << 1, 1, 0, 0, 1, 1, 1, 0, 1;
  const BratteliDiagram d(3, {}, {c});
  CHECK(is_strictly_ergodic(d) == ErgodicityVerdict::StrictlyErgodic);
  const StateVector s = state_vector(d);
  for (int i = 0; i < 3; ++i) CHECK(std::abs(s.lambda[i] - 1.0 / 3.0) < 1e-14);
}

TEST_CASE("state vector requires a strictly ergodic diagram") {
  const BratteliDiagram identity(2, {}, {mat2(1, 0, 0, 1)});
  CHECK_THROWS_AS(state_vector(identity), NotErgodic);
  const BratteliDiagram shear(2, {}, {mat2(1, 1, 0, 1)});
  CHECK_THROWS_AS(state_vector(shear), NotErgodic);
}

TEST_CASE("state vector reports no convergence at tiny depth") {
  CHECK_THROWS_AS(state_vector(golden_diagram(), 4), NoConvergence);
}
