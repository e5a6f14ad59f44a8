#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gibbs/conjugate.hpp"
#include "gibbs/errors.hpp"
#include "gibbs/inverse.hpp"

using namespace gibbs;

namespace {

// Golden-section maximum of a concave function on [a, b].
double golden_max(const std::function<double(double)>& g, double a, double b) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double gc = g(c), gd = g(d);
  for (int i = 0; i < 200 && b - a > 1e-13; ++i) {
    if (gc < gd) {
      a = c, c = d, gc = gd, d = a + r * (b - a), gd = g(d);
    } else {
      b = d, d = c, gd = gc, c = b - r * (b - a), gc = g(c);
    }
  }
  return std::max(gc, gd);
}

double f_of(const SigmaSequence& s, double y) { return std::exp(log_eval(s, y, 0, 1e-15)); }

}  // namespace

TEST_CASE("exp conjugate") {
  CHECK(exp_conjugate(0.0) == ExtReal::finite(0.0));
  CHECK(exp_conjugate(std::numbers::e).value() == doctest::Approx(0.0));
  CHECK(exp_conjugate(1.0).value() == -1.0);
  CHECK(exp_conjugate(-0.5).is_pos_inf());
}

TEST_CASE("derivative and phi inverses") {
  const auto lin = SigmaSequence::linear();
  const auto r = solve_derivative(lin, 2.0);
  CHECK(r.converged);
  CHECK(r.y == doctest::Approx(-std::numbers::ln2).epsilon(1e-13));
  // phi(y) = 1/(1 - e^y) = 2 at y = -ln 2
  CHECK(solve_phi(lin, 2.0).y == doctest::Approx(-std::numbers::ln2).epsilon(1e-13));
}

TEST_CASE("linear conjugate closed form") {
  const auto lin = SigmaSequence::linear();
  const auto c = conjugate(lin, 2.0, 1e-12);
  CHECK(c.regime == Regime::Interior);
  CHECK(c.value.value() == doctest::Approx(-1.0 - 2.0 * std::numbers::ln2).epsilon(1e-14));
  REQUIRE(c.attaining_y);
  CHECK(*c.attaining_y == doctest::Approx(-std::numbers::ln2).epsilon(1e-13));
  CHECK(conjugate(lin, 0.0, 1e-12).regime == Regime::Zero);
  CHECK(conjugate(lin, 0.0, 1e-12).value == ExtReal::finite(0.0));
  CHECK(conjugate(lin, -1.0, 1e-12).regime == Regime::NegativeU);
  CHECK(conjugate(lin, -1.0, 1e-12).value.is_pos_inf());
  CHECK_THROWS_AS(conjugate(SigmaSequence::loglog(), 1.0, 1e-12), DomainError);
}

TEST_CASE("conjugate agrees with a brute-force supremum") {
  for (const char* s : {"linear", "quadratic", "power:0.5", "box:1"}) {
    const auto seq = SigmaSequence::parse(s);
    for (double u : {0.3, 1.7, 8.0, 40.0}) {
      const auto c = conjugate(seq, u, 1e-12);
      const double brute = golden_max([&](double y) { return y * u - f_of(seq, y); }, -60.0, -1e-6);
      CAPTURE(s);
      CAPTURE(u);
      CHECK(c.value.value() == doctest::Approx(brute).epsilon(1e-9));
    }
  }
}

TEST_CASE("plateau regime of the finite-slope log family") {
  const auto seq = SigmaSequence::logfam(3.0);
  const auto info = domain_info(seq);
  const double gamma = info.gamma.value(), fb = info.f_at_boundary.value();
  const auto at = conjugate(seq, gamma, 1e-12);
  CHECK(at.regime == Regime::BoundaryGamma);
  CHECK(at.value.value() == doctest::Approx(-gamma - fb).epsilon(1e-12));
  for (double d : {0.5, 1.0, 2.0, 10.0}) {
    const auto c = conjugate(seq, gamma + d, 1e-12);
    CHECK(c.regime == Regime::Plateau);
    CHECK(c.value.value() == doctest::Approx(-(gamma + d) - fb).epsilon(1e-13));
  }
  const auto in = conjugate(seq, 0.5 * gamma, 1e-12);
  CHECK(in.regime == Regime::Interior);
  CHECK(*in.attaining_y < -1.0);
}

TEST_CASE("conjugate is convex on a grid") {
  for (const char* s : {"linear", "logfam:3", "quadratic"}) {
    const auto seq = SigmaSequence::parse(s);
    double prev_slope = -1e300;
    double prev = conjugate(seq, 0.05, 1e-12).value.value();
    for (double u = 0.15; u < 5.0; u += 0.1) {
      const double cur = conjugate(seq, u, 1e-12).value.value();
      const double slope = (cur - prev) / 0.1;
      CAPTURE(s);
      CAPTURE(u);
      CHECK(slope >= prev_slope - 1e-9);
      prev_slope = slope;
      prev = cur;
    }
  }
}

TEST_CASE("conjugate of ln f") {
  const auto q = SigmaSequence::quadratic();
  CHECK(log_f_conjugate(q, 1.0, 1e-12).regime == Regime::Zero);
  CHECK(log_f_conjugate(q, 1.0, 1e-12).value == ExtReal::finite(0.0));
  CHECK(log_f_conjugate(q, 0.9, 1e-12).value.is_pos_inf());
  for (double v : {1.2, 1.5, 3.0, 10.0}) {
    const auto c = log_f_conjugate(q, v, 1e-12);
    const double brute = golden_max([&](double y) { return v * y - log_eval(q, y, 0, 1e-15); }, -80.0, -1e-6);
    CHECK(c.regime == Regime::Interior);
    CHECK(c.value.value() == doctest::Approx(brute).epsilon(1e-9));
  }
  const auto lf = SigmaSequence::logfam(3.0);
  const auto info = domain_info(lf);
  const double sup_phi = info.gamma.value() / info.f_at_boundary.value();
  const auto p = log_f_conjugate(lf, sup_phi + 1.0, 1e-12);
  CHECK(p.regime == Regime::Plateau);
  CHECK(p.value.value() == doctest::Approx(-(sup_phi + 1.0) - std::log(info.f_at_boundary.value())).epsilon(1e-12));
}

TEST_CASE("box conjugate") {
  CHECK(box_conjugate(1.0, 3.0, 1e-12).value.value() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(box_conjugate(0.0, 2.0, 1e-12).value == ExtReal::finite(0.0));
  CHECK(box_conjugate(0.0, 0.0, 1e-12).value == ExtReal::finite(0.0));
  CHECK(box_conjugate(1.0, 2.0, 1e-12).value.is_pos_inf());
  CHECK(box_conjugate(-1.0, 3.0, 1e-12).value.is_pos_inf());
  // h*(u, v) = u(ln u - 1) + 3u (ln g)*(v / 3u), g = sum_k e^{y k^2}
  const auto q = SigmaSequence::quadratic();
  for (auto [u, v] : {std::pair{1.0, 4.0}, std::pair{2.0, 10.0}, std::pair{0.5, 6.0}}) {
    const double rho = v / (3.0 * u);
    const double lc = golden_max([&](double y) { return rho * y - log_eval(q, y, 0, 1e-15); }, -80.0, -1e-6);
    const double expect = u * (std::log(u) - 1.0) + 3.0 * u * lc;
    CHECK(box_conjugate(u, v, 1e-12).value.value() == doctest::Approx(expect).epsilon(1e-9));
  }
  // kappa rescales the degenerate ray to v = 3 kappa u.
  CHECK(box_conjugate(1.0, 6.0, 1e-12, 2.0).value.value() == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(box_conjugate(1.0, 5.0, 1e-12, 2.0).value.is_pos_inf());
}

TEST_CASE("Fenchel-Young holds on a sweep") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> yd(-3.0, -0.1), ud(0.0, 5.0);
  for (const char* s : {"linear", "quadratic", "power:2"}) {
    const auto seq = SigmaSequence::parse(s);
    for (int i = 0; i < 40; ++i) {
      const double y = yd(rng), u = ud(rng);
      const double gap = f_of(seq, y) + conjugate(seq, u, 1e-12).value.value() - y * u;
      CHECK(gap >= -1e-12);
    }
  }
}
