#include <cmath>
#include <random>

#include "doctest.h"
#include "gibbs/errors.hpp"
#include "gibbs/series.hpp"

using namespace gibbs;

namespace {

long double brute(const SigmaSequence& seq, double y, int p, Index count) {
  long double s = 0.0L;
  for (Index n = seq.start_index() + count - 1; n >= seq.start_index(); --n) {
    const long double sg = sigma(seq, n);
    s += (p ? sg : 1.0L) * std::exp(sg * static_cast<long double>(y));
  }
  return s;
}

double closed_linear(double y) { return std::exp(y) / -std::expm1(y); }

}  // namespace

TEST_CASE("linear matches e^y / (1 - e^y)") {
  const auto seq = SigmaSequence::linear();
  for (double y : {-10.0, -3.0, -1.0, -0.3, -0.05}) {
    const double exact = closed_linear(y);
    const auto e = eval(seq, y, 0, 1e-14 * exact);
    CHECK(e.tail_bound <= 1e-14 * exact);
    CHECK(std::fabs(e.value - exact) <= 2e-14 * exact);
    const double d = std::exp(y) / (std::expm1(y) * std::expm1(y));
    CHECK(eval(seq, y, 1, 1e-14 * d).value == doctest::Approx(d).epsilon(1e-13));
  }
}

TEST_CASE("certified bracket contains a ten-fold truncation") {
  struct Case {
    const char* spec;
    double y;
  };
  const Case cases[] = {{"linear", -0.2}, {"quadratic", -0.05}, {"power:0.5", -1.0}, {"power:2", -0.1},
                        {"box:1", -0.5},  {"logfam:3", -1.5},   {"logfam:0.5", -1.3}};
  for (const auto& c : cases) {
    const auto seq = SigmaSequence::parse(c.spec);
    for (int p : {0, 1}) {
      const auto e = eval(seq, c.y, p, 1e-9);
      CAPTURE(c.spec);
      CAPTURE(p);
      const long double s10 = brute(seq, c.y, p, 10 * e.truncation_index);
      // s10 under-counts the truth, which lies in [value, value + tail].
      CHECK(static_cast<double>(s10) <= e.value + e.tail_bound + 1e-12);
      const auto tight = eval(seq, c.y, p, 1e-12);
      CHECK(tight.value <= e.value + e.tail_bound + 1e-13);
      CHECK(e.value <= tight.value + tight.tail_bound + 1e-13);
    }
  }
}

TEST_CASE("domain classification") {
  CHECK(domain_info(SigmaSequence::loglog()).boundary_class == BoundaryClass::EmptyDomain);
  const auto lin = domain_info(SigmaSequence::linear());
  CHECK(lin.boundary_class == BoundaryClass::OpenBoundary);
  CHECK(lin.alpha == 0.0);
  CHECK(domain_info(SigmaSequence::logfam(0.5)).boundary_class == BoundaryClass::OpenBoundary);
  CHECK(domain_info(SigmaSequence::logfam(1.0)).boundary_class == BoundaryClass::OpenBoundary);
  const auto a = domain_info(SigmaSequence::logfam(1.5));
  CHECK(a.boundary_class == BoundaryClass::ClosedInfiniteSlope);
  CHECK(a.alpha == 1.0);
  CHECK(a.gamma.is_pos_inf());
  CHECK(a.f_at_boundary.is_finite());
  const auto b = domain_info(SigmaSequence::logfam(3.0));
  CHECK(b.boundary_class == BoundaryClass::ClosedFiniteSlope);
  // Reference: partial sum to 2e5 plus Euler-Maclaurin tail with the closed-form integral.
  CHECK(b.gamma.value() == doctest::Approx(1.8330835874010).epsilon(1e-11));
  CHECK(b.f_at_boundary.value() == doctest::Approx(0.56449618530568).epsilon(1e-11));
  CHECK(b.gamma_tail_bound <= 1e-12);
}

TEST_CASE("admissibility errors") {
  CHECK_THROWS_AS(eval(SigmaSequence::loglog(), -5.0, 0, 1e-10), DomainError);
  CHECK_THROWS_AS(eval(SigmaSequence::linear(), 0.0, 0, 1e-10), DomainError);
  CHECK_THROWS_AS(eval(SigmaSequence::logfam(1.5), -1.0, 1, 1e-10), DomainError);
  CHECK_NOTHROW(eval(SigmaSequence::logfam(1.5), -1.0, 0, 1e-8));
  CHECK_NOTHROW(eval(SigmaSequence::logfam(3.0), -1.0, 1, 1e-8));
  try {
    eval(SigmaSequence::loglog(), -5.0, 0, 1e-10);
  } catch (const DomainError& e) {
    REQUIRE(e.info().has_value());
    CHECK(e.info()->boundary_class == BoundaryClass::EmptyDomain);
  }
}

TEST_CASE("budget exhaustion reports the best partial result") {
  EvalOptions opts;
  opts.max_terms = 1000;
  try {
    eval(SigmaSequence::linear(), -1e-4, 0, 1e-15, opts);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.best().truncation_index <= 1000);
    CHECK(e.best().tail_bound > 1e-15);
  }
}

TEST_CASE("log_eval survives underflow") {
  const auto seq = SigmaSequence::linear();
  CHECK(log_eval(seq, -800.0, 0, 1e-15) == doctest::Approx(-800.0).epsilon(1e-15));
  CHECK(log_eval(SigmaSequence::quadratic(), -500.0, 1, 1e-15) == doctest::Approx(-500.0).epsilon(1e-15));
  CHECK(log_eval(seq, -1.0, 0, 1e-15) == doctest::Approx(std::log(closed_linear(-1.0))).epsilon(1e-14));
}

TEST_CASE("convexity, monotone phi and log-convexity on random probes") {
  std::mt19937_64 rng(11);
  for (const char* s : {"linear", "quadratic", "power:0.5", "logfam:3", "box:1"}) {
    const auto seq = SigmaSequence::parse(s);
    const double right = seq.family() == Family::LogFam ? -1.05 : -0.05;
    std::uniform_real_distribution<double> yd(-4.0, right);
    auto F = [&](double y) { return std::exp(log_eval(seq, y, 0, 1e-15)); };
    for (int i = 0; i < 25; ++i) {
      double y1 = yd(rng), y3 = yd(rng);
      if (y1 > y3) std::swap(y1, y3);
      if (y3 - y1 < 1e-3) continue;
      const double t = 0.3, y2 = (1 - t) * y1 + t * y3;
      CAPTURE(s);
      CHECK(F(y2) <= (1 - t) * F(y1) + t * F(y3));
      CHECK(phi(seq, y1, 1e-13) < phi(seq, y3, 1e-13));
      // (ln f)'' > 0: second difference of ln f.
      const double h = 1e-3;
      const double l = log_eval(seq, y2 - h, 0, 1e-15) - 2 * log_eval(seq, y2, 0, 1e-15) + log_eval(seq, y2 + h, 0, 1e-15);
      CHECK(l > 0.0);
    }
  }
}

TEST_CASE("phi of the linear family") {
  // phi = f'/f = 1/(1 - e^y)
  for (double y : {-5.0, -1.0, -0.1}) CHECK(phi(SigmaSequence::linear(), y, 1e-14) == doctest::Approx(1.0 / -std::expm1(y)));
}
