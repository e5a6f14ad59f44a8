#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "doctest.h"
#include "gibbs/errors.hpp"
#include "gibbs/sequences.hpp"

using namespace gibbs;

TEST_CASE("parse round-trips the canonical spec") {
  for (const char* s : {"linear", "quadratic", "loglog", "power:0.5", "logfam:3", "box:2"}) {
    const auto seq = SigmaSequence::parse(s);
    CHECK(SigmaSequence::parse(seq.spec()).spec() == seq.spec());
  }
  CHECK_THROWS_AS(SigmaSequence::parse("power:"), std::invalid_argument);
  CHECK_THROWS_AS(SigmaSequence::parse("nope"), std::invalid_argument);
  CHECK_THROWS_AS(SigmaSequence::parse("box:-1"), std::invalid_argument);
}

TEST_CASE("sigma values") {
  CHECK(sigma(SigmaSequence::linear(), 7) == 7.0);
  CHECK(sigma(SigmaSequence::quadratic(), 5) == 25.0);
  CHECK(sigma(SigmaSequence::power(0.5), 9) == doctest::Approx(3.0));
  const double l3 = std::log(3.0);
  CHECK(sigma(SigmaSequence::logfam(3.0), 3) == doctest::Approx(std::log(3.0 * l3 * l3 * l3)).epsilon(1e-15));
  CHECK(sigma(SigmaSequence::loglog(), 10) == doctest::Approx(std::log(std::log(10.0))));
  CHECK(sigma_min(SigmaSequence::box(1.0)) == 3.0);
  CHECK_THROWS_AS(sigma(SigmaSequence::logfam(1.0), 2), DomainError);
}

TEST_CASE("sigma is increasing on every built-in family") {
  for (const char* s : {"linear", "quadratic", "loglog", "power:0.3", "logfam:-2", "logfam:0.5", "logfam:3", "box:1"}) {
    const auto seq = SigmaSequence::parse(s);
    double prev = -1e300;
    for (Index n = seq.start_index(); n < seq.start_index() + 500; ++n) {
      const double v = sigma(seq, n);
      CHECK(v >= prev);
      CHECK(v > 0.0);
      prev = v;
    }
  }
}

TEST_CASE("increment gap") {
  CHECK(increment_gap(SigmaSequence::linear(), 1) == 1.0);
  CHECK(increment_gap(SigmaSequence::box(1.0), 1) == 0.0);
  const auto q = SigmaSequence::quadratic();
  const double d = increment_gap(q, 10);
  CHECK(d > 0.0);
  for (Index n = 10; n < 200; ++n) CHECK(sigma(q, n + 1) - sigma(q, n) >= d);
}

TEST_CASE("enumerate_box is exhaustive up to level 100") {
  std::vector<std::tuple<int, int, int, int>> brute;
  for (int k = 1; k <= 10; ++k)
    for (int l = 1; l <= 10; ++l)
      for (int m = 1; m <= 10; ++m) {
        const int s = k * k + l * l + m * m;
        if (s <= 100) brute.emplace_back(s, k, l, m);
      }
  std::sort(brute.begin(), brute.end());
  const auto states = enumerate_box(1.0, brute.size());
  REQUIRE(states.size() == brute.size());
  for (std::size_t i = 0; i < brute.size(); ++i) {
    const auto [s, k, l, m] = brute[i];
    CHECK(states[i].sigma == s);
    CHECK(states[i].triple == std::array<int, 3>{k, l, m});
  }
  const auto next = enumerate_box(1.0, brute.size() + 1);
  CHECK(next.back().sigma > 100.0);

  std::map<int, int> mult;
  for (const auto& t : brute) ++mult[std::get<0>(t)];
  const auto levels = box_levels(100);
  REQUIRE(levels.size() == mult.size());
  for (const auto& lv : levels) CHECK(mult[static_cast<int>(lv.level)] == lv.multiplicity);
}

TEST_CASE("box with kappa scales the spectrum") {
  const auto a = enumerate_box(1.0, 50), b = enumerate_box(2.5, 50);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(b[i].sigma == doctest::Approx(2.5 * a[i].sigma));
  const auto seq = SigmaSequence::box(2.5);
  CHECK(sigma(seq, 1) == doctest::Approx(7.5));
}

TEST_CASE("varsigma families") {
  const auto p = VarsigmaSequence::parse("power:2");
  CHECK(p.value(5) == 25.0);
  const auto e = VarsigmaSequence::parse("exp:0.5");
  CHECK(e.log_value(4) == doctest::Approx(2.0));
  const auto sq = VarsigmaSequence::parse("expsq");
  CHECK(sq.log_value(30) == doctest::Approx(900.0));
  CHECK(VarsigmaSequence::parse(e.spec()).parameter() == 0.5);
  CHECK_THROWS_AS(VarsigmaSequence::parse("power:1"), std::invalid_argument);
  CHECK_THROWS_AS(VarsigmaSequence::parse("exp:0"), std::invalid_argument);
}
