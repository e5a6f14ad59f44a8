#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gibbs/entropy.hpp"
#include "gibbs/errors.hpp"

using namespace gibbs;

namespace {

double entropy_of(const std::vector<double>& w) {
  double s = 0.0;
  for (double x : w) s += x > 0 ? x * (std::log(x) - 1.0) : 0.0;
  return s;
}

}  // namespace

TEST_CASE("two-moment fit of the linear family is geometric") {
  const auto fit = fit_gibbs(SigmaSequence::linear(), 1.0, 2.0, 1e-13);
  CHECK(fit.status == FitStatus::InteriorUnique);
  REQUIRE(fit.weights.size() >= 30);
  for (int n = 1; n <= 30; ++n) CHECK(fit.weights[n - 1].value == doctest::Approx(std::pow(0.5, n)).epsilon(1e-12));
  CHECK(fit.mass.value == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.energy.value == doctest::Approx(2.0).epsilon(1e-12));
  // sum 2^-n (-n ln 2 - 1) = -2 ln 2 - 1
  CHECK(fit.entropy.value() == doctest::Approx(-1.0 - 2.0 * std::numbers::ln2).epsilon(1e-12));
}

TEST_CASE("single-moment fit matches the conjugate") {
  const auto lin = SigmaSequence::linear();
  for (double u : {0.5, 2.0, 7.0}) {
    const auto fit = min_entropy_moment(lin, u, 1e-13);
    CHECK(fit.status == FitStatus::InteriorUnique);
    CHECK(fit.entropy.value() == doctest::Approx(conjugate(lin, u, 1e-13).value.value()).epsilon(1e-11));
    const double q = alternating_ratio(u);
    CHECK(fit.weights[1].value / fit.weights[0].value == doctest::Approx(q).epsilon(1e-12));
  }
  CHECK(min_entropy_moment(lin, 0.0, 1e-12).entropy == ExtReal::finite(0.0));
  CHECK(min_entropy_moment(lin, -1.0, 1e-12).status == FitStatus::Infeasible);
}

TEST_CASE("plateau affinity: non-attained infimum equals the conjugate") {
  const auto seq = SigmaSequence::logfam(3.0);
  const auto info = domain_info(seq);
  const double gamma = info.gamma.value();
  for (double d : {0.5, 1.0, 2.0}) {
    const auto fit = min_entropy_moment(seq, gamma + d, 1e-12);
    CHECK(fit.status == FitStatus::PlateauNonAttained);
    CHECK(fit.weights.empty());
    CHECK(fit.entropy.value() == doctest::Approx(-(gamma + d) - info.f_at_boundary.value()).epsilon(1e-12));
  }
  const auto at = min_entropy_moment(seq, gamma, 1e-12);
  CHECK(at.status == FitStatus::InteriorUnique);
  CHECK(*at.dual_y == -1.0);
}

TEST_CASE("uniqueness: moment-preserving perturbations raise entropy") {
  const auto fit = fit_gibbs(SigmaSequence::linear(), 1.0, 2.0, 1e-13);
  std::vector<double> w;
  for (const auto& x : fit.weights) w.push_back(x.value);
  const double base = entropy_of(w);
  // d = t (1, -2, 1) on (n, n+1, n+2) keeps sum w_n and sum n w_n.
  for (std::size_t n : {0u, 3u, 10u}) {
    for (double t : {1e-4, -1e-4}) {
      auto p = w;
      const double s = t * p[n + 1];
      p[n] += s, p[n + 1] -= 2 * s, p[n + 2] += s;
      CHECK(entropy_of(p) > base);
    }
  }
}

TEST_CASE("degenerate and infeasible two-moment problems") {
  const auto box = SigmaSequence::box(1.0);
  const auto s = fit_gibbs(box, 1.0, 3.0, 1e-12);
  CHECK(s.status == FitStatus::BoundarySingleton);
  CHECK(s.entropy.value() == -1.0);
  REQUIRE(s.weights.size() == 1);
  CHECK(s.weights[0].triple == std::array<int, 3>{1, 1, 1});
  CHECK(fit_gibbs(box, 1.0, 2.0, 1e-12).status == FitStatus::Infeasible);
  const auto o = fit_gibbs(box, 0.0, 2.0, 1e-12);
  CHECK(o.status == FitStatus::Infeasible);
  CHECK(o.reason.find("h*(0, v) = 0") != std::string::npos);
  CHECK(fit_gibbs(box, 0.0, 0.0, 1e-12).entropy == ExtReal::finite(0.0));
  CHECK_THROWS_AS(fit_gibbs(SigmaSequence::loglog(), 1.0, 2.0, 1e-12), DomainError);
}

TEST_CASE("box interior fit reproduces its moments") {
  const auto fit = fit_gibbs(SigmaSequence::box(1.0), 1.0, 4.0, 1e-13);
  CHECK(fit.status == FitStatus::InteriorUnique);
  CHECK(fit.mass.value == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(fit.energy.value == doctest::Approx(4.0).epsilon(1e-10));
  CHECK(fit.entropy.value() == doctest::Approx(box_conjugate(1.0, 4.0, 1e-13).value.value()).epsilon(1e-10));
  // u_{klm} = e^{x + (k^2 + l^2 + m^2) y}
  for (const auto& w : fit.weights) {
    const auto& t = *w.triple;
    const double s = t[0] * t[0] + t[1] * t[1] + t[2] * t[2];
    CHECK(w.value == doctest::Approx(std::exp(*fit.dual_x + s * *fit.dual_y)).epsilon(1e-13));
  }
}

TEST_CASE("plateau witness gap decreases with the window length") {
  const auto seq = SigmaSequence::logfam(3.0);
  const double gamma = domain_info(seq).gamma.value();
  const double u = gamma + 1.0;
  Index n = seq.start_index();
  while (sigma(seq, n + 1) < u) ++n;
  double prev = 1e300, lambda = 0.0;
  for (Index q : {1000, 4000, 16000, 64000}) {
    const auto w = plateau_window(seq, u, n, q, lambda);
    CHECK(w.gap > 0.0);
    CHECK(w.gap < prev);
    prev = w.gap;
    lambda = w.lambda;
  }
}

TEST_CASE("plateau witness meets a loose tolerance and sums to u") {
  const auto seq = SigmaSequence::logfam(3.0);
  const double u = domain_info(seq).gamma.value() + 0.5;
  FitOptions opts;
  opts.max_weights = 1 << 20;
  const auto w = plateau_witness(seq, u, 0.05, opts);
  CHECK(w.gap <= 0.05);
  CHECK(w.gap > 0.0);
  double energy = 0.0, ent = 0.0;
  for (const auto& x : w.weights) {
    CHECK(x.value >= 0.0);
    energy += sigma(seq, x.index) * x.value;
    ent += x.value * (std::log(x.value) - 1.0);
  }
  CHECK(energy == doctest::Approx(u).epsilon(1e-10));
  CHECK(ent == doctest::Approx(w.target + w.gap).epsilon(1e-8));

  FitOptions small;
  small.max_terms = 300000;
  CHECK_THROWS_AS(plateau_witness(seq, u, 1e-6, small), WitnessNotReached);
}

TEST_CASE("alternating attainment and witnesses") {
  CHECK(alternating_ratio(2.0) == doctest::Approx(0.5).epsilon(1e-15));
  const auto vs = VarsigmaSequence::power_k(2.0);
  const auto a = alternating_attainment(2.0, vs, 1e-15);
  CHECK(a.convergent);
  CHECK(*a.v_bar == doctest::Approx(-2.0 / 27.0).epsilon(1e-13));
  CHECK_FALSE(alternating_attainment(2.0, VarsigmaSequence::exp_alpha(1.0), 1e-12).convergent);
  CHECK(alternating_attainment(2.0, VarsigmaSequence::exp_alpha(0.5), 1e-12).convergent);
  Index prev_prefix = 0;
  for (double eps : {1e-1, 1e-2, 1e-3, 1e-5}) {
    const auto w = alternating_witness(2.0, 0.0, eps, vs);
    CHECK(w.gap <= eps);
    CHECK(w.gap >= 0.0);
    CHECK(w.u_residual <= 1e-12);
    CHECK(w.v_residual <= 1e-12);
    CHECK(w.prefix_end >= prev_prefix);
    prev_prefix = w.prefix_end;
    double u = 0.0, v = 0.0;
    for (const auto& x : w.weights) {
      CHECK(x.value >= 0.0);
      u += x.index * x.value;
      v += (x.index % 2 ? -1.0 : 1.0) * vs.value(x.index) * x.value;
    }
    CHECK(u == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::fabs(v) <= 1e-10);
  }
  CHECK(alternating_witness(0.0, 0.0, 1e-3, vs).weights.empty());
  CHECK_THROWS_AS(alternating_witness(0.0, 1.0, 1e-3, vs), Infeasible);
}
