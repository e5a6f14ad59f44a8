#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gibbs/entropy.hpp"
#include "gibbs/errors.hpp"
#include "gibbs/oracle.hpp"

using namespace gibbs;

TEST_CASE("truncated primal against the closed form") {
  const double exact = -1.0 - 2.0 * std::numbers::ln2;
  const auto p = primal_truncated(SigmaSequence::linear(), 60, MomentTargets{2.0, std::nullopt}, 1e-13);
  CHECK(p.value == doctest::Approx(exact).epsilon(1e-9));
  CHECK(p.residual <= 1e-12);
  CHECK(p.weights.size() == 60);
}

TEST_CASE("truncated primal upper-bounds the countable infimum, decreasing in N") {
  const auto lin = SigmaSequence::linear();
  const double target = conjugate(lin, 10.0, 1e-13).value.value();
  double prev = 1e300;
  for (Index N : {3, 10, 30, 100, 300, 1000}) {
    const auto p = primal_truncated(lin, N, MomentTargets{10.0, std::nullopt}, 1e-12);
    CHECK(p.value >= target - 1e-10);
    CHECK(p.value <= prev + 1e-12);
    prev = p.value;
  }
  CHECK(primal_truncated(lin, 3, MomentTargets{10.0, std::nullopt}, 1e-12).value > target);
  CHECK(prev - target < 1e-5);
}

TEST_CASE("truncated primal with two moments matches the box fit") {
  const auto box = SigmaSequence::box(1.0);
  const auto p = primal_truncated(box, 200, MomentTargets{4.0, 1.0}, 1e-13);
  const auto fit = fit_gibbs(box, 1.0, 4.0, 1e-13);
  CHECK(p.value == doctest::Approx(fit.entropy.value()).epsilon(1e-6));
  CHECK(*p.dual_x == doctest::Approx(*fit.dual_x).epsilon(1e-6));
}

TEST_CASE("infeasible truncations name the range") {
  try {
    primal_truncated(SigmaSequence::linear(), 3, MomentTargets{-1.0, std::nullopt}, 1e-12);
    FAIL("expected Infeasible");
  } catch (const Infeasible& e) {
    CHECK(std::string(e.what()).find("range") != std::string::npos);
  }
  CHECK_THROWS_AS(primal_truncated(SigmaSequence::linear(), 5, MomentTargets{6.0, 1.0}, 1e-12), Infeasible);
}

TEST_CASE("gradient sums") {
  const auto r = check_gradient_sum(SigmaSequence::linear(), -1.0, 1e-5, 1e-7);
  CHECK(r.passed);
  CHECK(r.rel_gap <= 1e-7);
  // one-sided directional derivatives: f'_+(y; 1) = -f'_+(y; -1) = f'(y)
  CHECK(r.rhs[1] == -r.rhs[2]);
  CHECK(check_gradient_sum_box(0.0, -1.0, 1e-5, 1e-6).passed);
  CHECK(check_gradient_sum_box(0.7, -0.3, 1e-5, 1e-6, 2.0).passed);
}

TEST_CASE("central differences converge at second order") {
  const auto q = SigmaSequence::quadratic();
  for (double y : {-1.0, -0.4}) {
    const auto a = check_gradient_sum(q, y, 2e-3, 1.0);
    const auto b = check_gradient_sum(q, y, 1e-3, 1.0);
    const double ratio = std::fabs(a.lhs[0] - a.rhs[0]) / std::fabs(b.lhs[0] - b.rhs[0]);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
  }
}

TEST_CASE("Fenchel-Young reports") {
  const auto eq = check_fenchel_young(SigmaSequence::linear(), -std::numbers::ln2, 2.0, 1e-10);
  CHECK(eq.passed);
  CHECK(std::fabs(eq.lhs[0]) <= 1e-13);
  const auto z = check_fenchel_young(SigmaSequence::linear(), -1.0, 0.0, 1e-10);
  CHECK(z.lhs[0] == doctest::Approx(linear_f(-1.0)).epsilon(1e-14));
  const auto qd = check_fenchel_young(SigmaSequence::quadratic(), -2.0, 1.0, 1e-10);
  CHECK(qd.passed);
  CHECK(qd.lhs[0] > 1e-3);
}

TEST_CASE("alternating gradient series") {
  const double x = -std::numbers::ln2;
  const auto g = alternating_gradient_series(x, VarsigmaSequence::power_k(2.0), 200);
  CHECK(g.second == doctest::Approx(-2.0 / 27.0).epsilon(1e-12));
  CHECK(g.first == doctest::Approx(2.0).epsilon(1e-13));
  // f''(x) = e^x (1 + e^x) / (1 - e^x)^3
  CHECK(linear_f2(x) == doctest::Approx(0.5 * 1.5 / 0.125));
  const auto c = alternating_gradient_series(-3.0, VarsigmaSequence::exp_alpha(2.0), 500);
  CHECK(c.convergent);
  CHECK(c.second == doctest::Approx(-std::exp(-1.0) / (1.0 + std::exp(-1.0))).epsilon(1e-13));
  const auto d1 = alternating_gradient_series(-1.0, VarsigmaSequence::exp_alpha(2.0), 50);
  const auto d2 = alternating_gradient_series(-1.0, VarsigmaSequence::exp_alpha(2.0), 100);
  CHECK_FALSE(d2.convergent);
  CHECK(d2.last_term_log > d1.last_term_log);
  CHECK_FALSE(alternating_gradient_series(-5.0, VarsigmaSequence::exp_square(), 10).convergent);
}
