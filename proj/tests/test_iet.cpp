#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "lamination/iet.hpp"

using namespace lamination;

namespace {

const double kL1 = (std::sqrt(5.0) - 1.0) / 2.0;
const double kL2 = (3.0 - std::sqrt(5.0)) / 2.0;
const double kEps = (3.0 + std::sqrt(5.0)) / 2.0;  // induction expansion per A,B pair

Vec<double> vec2(double a, double b) {
  Vec<double> v(2);
  v << a, b;
  return v;
}

IET golden_iet() { return IET(vec2(kL1, kL2), Permutation{{2, 1}}); }

IncidenceMatrix mat2(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  IncidenceMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

// Eigen comparison expressions do not instantiate for cpp_int; compare entries.
bool same_matrix(const Mat<Int>& a, const Mat<Int>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

}  // namespace

TEST_CASE("IET construction validates input") {
  CHECK_THROWS_AS(IET(vec2(0.5, 0.0), Permutation{{2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(IET(vec2(0.5, -0.1), Permutation{{2, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(IET(vec2(0.5, 0.5), Permutation{{2, 1, 3}}), std::invalid_argument);
  CHECK_THROWS_AS(IET(vec2(0.5, 0.5), Permutation{{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(IET(vec2(0.5, 0.5), Permutation{{1, 2}}), ReduciblePermutation);
  Vec<double> three(3);
  three << 0.2, 0.3, 0.5;
  CHECK_THROWS_AS(IET(three, Permutation{{2, 1, 3}}), ReduciblePermutation);
}

TEST_CASE("evaluation of the golden rotation") {
  const IET t = golden_iet();
  CHECK(t.total() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t.domain_start(1) == 0.0);
  CHECK(t.domain_start(2) == kL1);
  CHECK(t.domain_start(3) == doctest::Approx(1.0).epsilon(1e-15));

  CHECK(t.interval_index(0.0) == 1);
  CHECK(t.interval_index(kL1 - 1e-12) == 1);
  CHECK(t.interval_index(kL1) == 2);
  CHECK(t.interval_index(0.99) == 2);
  CHECK_THROWS_AS(t.interval_index(-0.01), OutOfDomain);
  CHECK_THROWS_AS(t.interval_index(1.0), OutOfDomain);

  CHECK(t.apply(0.0) == doctest::Approx(kL2).epsilon(1e-15));
  CHECK(t.apply(kL1) == doctest::Approx(0.0));
  CHECK(t.apply(0.25) == doctest::Approx(0.25 + kL2).epsilon(1e-15));
  CHECK(t.apply(0.75) == doctest::Approx(0.75 - kL1).epsilon(1e-15));
  CHECK_THROWS_AS(t.apply(1.0), OutOfDomain);

  for (double x : {0.0, 0.1, 0.4, kL1, 0.7, 0.95}) {
    CHECK(t.inverse_apply(t.apply(x)) == doctest::Approx(x).epsilon(1e-15));
  }
}

TEST_CASE("domain intervals map onto range slots") {
  Vec<double> lengths(4);
  lengths << 0.3, 0.2, 0.4, 0.1;
  const IET t(lengths, Permutation{{4, 1, 2, 3}});
  for (int i = 1; i <= 4; ++i) {
    CHECK(t.apply(t.domain_start(i)) ==
          doctest::Approx(t.slot_start(t.permutation()(i))).epsilon(1e-15));
  }
  // Range slots tile [0, total) in slot order.
  CHECK(t.slot_start(1) == 0.0);
  CHECK(t.slot_start(5) == doctest::Approx(t.total()).epsilon(1e-15));
}

TEST_CASE("natural coding") {
  const IET t = golden_iet();
  const std::vector<int> code = natural_coding(t, kL1 - 1e-9, 5);
  CHECK(code == std::vector<int>({1, 2, 1, 2, 1}));

  // Coding must agree with direct iteration away from discontinuities.
  double x = 0.25;
  std::vector<int> expected;
  for (int i = 0; i < 10; ++i) {
    expected.push_back(t.interval_index(x));
    x = t.apply(x);
  }
  CHECK(natural_coding(t, 0.25, 10) == expected);

  CHECK_THROWS_AS(natural_coding(t, kL1, 3), OrbitHitsDiscontinuity);
  CHECK_THROWS_AS(natural_coding(t, kL1 + 1e-14, 3), OrbitHitsDiscontinuity);
}

TEST_CASE("rauzy step case A on the golden rotation") {
  const InductionStep s = rauzy_step(golden_iet());
  CHECK(s.type == 'A');
  CHECK(s.d == 1);
  CHECK(s.matrix == mat2(1, 1, 0, 1));
  CHECK(s.induced.lengths()[0] == doctest::Approx(kL1 - kL2).epsilon(1e-14));
  CHECK(s.induced.lengths()[1] == doctest::Approx(kL2).epsilon(1e-14));
  CHECK(s.induced.permutation().images == std::vector<int>({2, 1}));
  // Admissible prefix of the uninduced interval: drop the smaller last piece.
  CHECK(s.gamma.xi == 0.0);
  CHECK(s.gamma.eta == doctest::Approx(kL1).epsilon(1e-14));
}

TEST_CASE("rauzy step case B on the once-induced golden rotation") {
  const InductionStep s1 = rauzy_step(golden_iet());
  const InductionStep s2 = rauzy_step(s1.induced);
  CHECK(s2.type == 'B');
  CHECK(s2.d == 1);
  CHECK(s2.matrix == mat2(1, 0, 1, 1));
  CHECK(s2.induced.lengths()[0] == doctest::Approx(kL1 - kL2).epsilon(1e-14));
  CHECK(s2.induced.lengths()[1] == doctest::Approx(kL2 - (kL1 - kL2)).epsilon(1e-12));
  CHECK(s2.induced.permutation().images == std::vector<int>({2, 1}));
}

TEST_CASE("exact tie raises TieBreakUndefined") {
  const IET half(vec2(0.5, 0.5), Permutation{{2, 1}});
  CHECK_THROWS_AS(rauzy_step(half), TieBreakUndefined);

  // (2/3, 1/3) reaches an exact tie after one step; induce reports the step.
  const IET thirds(vec2(2.0 / 3.0, 1.0 / 3.0), Permutation{{2, 1}});
  const InductionStep s1 = rauzy_step(thirds);
  CHECK(s1.type == 'A');
  try {
    induce(thirds, 5);
    FAIL("expected TieBreakUndefined");
  } catch (const TieBreakUndefined& e) {
    CHECK(std::string(e.what()).find("step 2") != std::string::npos);
  }

  // Very deep golden induction degrades in floats until two lengths agree to
  // relative 1e-12; that surfaces as a reported tie, never as silent noise.
  CHECK_THROWS_AS(induce(golden_iet(), 90), TieBreakUndefined);
}

TEST_CASE("golden induction alternates A and B with Fibonacci products") {
  const InductionTrace trace = induce(golden_iet(), 6);
  REQUIRE(trace.depth() == 6);
  for (int n = 1; n <= 6; ++n) {
    CHECK(trace.steps[static_cast<std::size_t>(n - 1)].type == (n % 2 == 1 ? 'A' : 'B'));
  }
  const Mat<Int>& p6 = trace.products.back();
  CHECK(p6(0, 0) == 13);
  CHECK(p6(0, 1) == 8);
  CHECK(p6(1, 0) == 8);
  CHECK(p6(1, 1) == 5);
  // Heights are column sums of the product.
  CHECK(trace.heights.back()[0] == 21);
  CHECK(trace.heights.back()[1] == 13);
  CHECK(trace.marked_point == doctest::Approx(kL1).epsilon(1e-15));
  CHECK(trace.grouping == 2);
}

TEST_CASE("flanking tower floors around the marked point") {
  const InductionTrace trace = induce(golden_iet(), 5);
  const auto flank = [&](int level) { return trace.flanks[static_cast<std::size_t>(level - 1)]; };
  CHECK(flank(1).left_tower == 2);
  CHECK(flank(1).left_floor == 0);
  CHECK(flank(1).right_tower == 2);
  CHECK(flank(1).right_floor == 1);

  CHECK(flank(2).left_tower == 1);
  CHECK(flank(2).left_floor == 1);
  CHECK(flank(2).right_tower == 2);
  CHECK(flank(2).right_floor == 1);

  CHECK(flank(3).left_tower == 2);
  CHECK(flank(3).left_floor == 1);
  CHECK(flank(3).right_tower == 2);
  CHECK(flank(3).right_floor == 4);

  CHECK(flank(4).left_tower == 1);
  CHECK(flank(4).left_floor == 4);
  CHECK(flank(4).right_tower == 2);
  CHECK(flank(4).right_floor == 4);

  CHECK(flank(5).left_tower == 2);
  CHECK(flank(5).left_floor == 4);
  CHECK(flank(5).right_tower == 2);
  CHECK(flank(5).right_floor == 12);
}

TEST_CASE("gamma chain nests onto the marked point with closed-form width") {
  const InductionTrace trace = induce(golden_iet(), 24);
  double prev_xi = 0.0, prev_eta = 1.0;
  for (int n = 1; n <= trace.depth(); ++n) {
    const AdmissibleInterval g = trace.steps[static_cast<std::size_t>(n - 1)].gamma;
    CHECK(g.xi >= prev_xi - 1e-15);
    CHECK(g.eta <= prev_eta + 1e-15);
    CHECK(g.xi <= kL1);
    CHECK(g.eta > kL1);
    prev_xi = g.xi;
    prev_eta = g.eta;
  }
  // After each A,B pair the interval is [l1 - l1/eps^k, l1 + l2/eps^k).
  for (int k = 1; k <= 10; ++k) {
    const AdmissibleInterval g = trace.steps[static_cast<std::size_t>(2 * k - 1)].gamma;
    const double scale = std::pow(kEps, -k);
    CHECK(g.xi == doctest::Approx(kL1 - kL1 * scale).epsilon(1e-11));
    CHECK(g.eta == doctest::Approx(kL1 + kL2 * scale).epsilon(1e-11));
  }
  // Exact products reconstruct the input lengths to tiny residual.
  for (double r : trace.residuals) CHECK(r < 1e-12);
  CHECK(trace.contraction_constant > 0.0);
}

TEST_CASE("theta point estimate") {
  CHECK_THROWS_AS(theta_point(induce(golden_iet(), 1)), NotContracted);
  CHECK_THROWS_AS(theta_point(induce(golden_iet(), 4)), NotContracted);

  const ThetaPoint theta = theta_point(induce(golden_iet(), 40));
  CHECK(theta.radius < 1e-8);
  CHECK(std::abs(theta.value - kL1) <= theta.radius);

  // Re-running the construction reproduces the value bit for bit.
  const ThetaPoint again = theta_point(induce(golden_iet(), 40));
  CHECK(again.value == theta.value);
  CHECK(again.radius == theta.radius);
}

TEST_CASE("extending a trace matches inducing in one go") {
  InductionTrace piecewise = induce(golden_iet(), 3);
  extend_trace(piecewise, 3);
  const InductionTrace whole = induce(golden_iet(), 6);
  REQUIRE(piecewise.depth() == 6);
  CHECK(same_matrix(piecewise.products.back(), whole.products.back()));
  for (int n = 1; n <= 6; ++n) {
    const auto i = static_cast<std::size_t>(n - 1);
    CHECK(piecewise.steps[i].type == whole.steps[i].type);
    CHECK(piecewise.steps[i].gamma.xi == whole.steps[i].gamma.xi);
    CHECK(piecewise.steps[i].gamma.eta == whole.steps[i].gamma.eta);
    CHECK(piecewise.flanks[i].right_floor == whole.flanks[i].right_floor);
  }
}

TEST_CASE("keane probe") {
  const KeaneReport good = keane_probe(golden_iet());
  CHECK(good.verdict == KeaneVerdict::GenericLikely);
  CHECK_FALSE(good.collision.has_value());

  const KeaneReport rational = keane_probe(IET(vec2(0.5, 0.5), Permutation{{2, 1}}), 10);
  CHECK(rational.verdict == KeaneVerdict::DegenerateDetected);
  REQUIRE(rational.collision.has_value());
  CHECK(rational.collision->distance <= 1e-10);

  const KeaneReport thirds =
      keane_probe(IET(vec2(2.0 / 3.0, 1.0 / 3.0), Permutation{{2, 1}}), 10);
  CHECK(thirds.verdict == KeaneVerdict::DegenerateDetected);
}
