#include <cmath>
#include <random>

#include "doctest.h"
#include "gibbs/scenarios.hpp"

using namespace gibbs;

TEST_CASE("example 1 domain table") {
  const auto rows = example1_table();
  REQUIRE(rows.size() == 5);
  const BoundaryClass expected[] = {BoundaryClass::OpenBoundary, BoundaryClass::OpenBoundary,
                                    BoundaryClass::ClosedInfiniteSlope, BoundaryClass::ClosedFiniteSlope,
                                    BoundaryClass::EmptyDomain};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(rows[i].sequence);
    CHECK(rows[i].computed == expected[i]);
    CHECK(rows[i].matches);
    CHECK_FALSE(rows[i].certificates.empty());
  }
  REQUIRE(rows[3].gamma);
  CHECK(*rows[3].gamma == doctest::Approx(1.8330835874010).epsilon(1e-11));
  CHECK_FALSE(rows[2].gamma);
}

TEST_CASE("example 2 rows") {
  const auto rows = example2_table();
  REQUIRE(rows.size() == 8);
  CHECK(rows[1].result.second == doctest::Approx(-2.0 / 27.0).epsilon(1e-12));
  for (const auto& r : rows) {
    if (r.gap) CHECK(*r.gap < 1e-8);
  }
}

TEST_CASE("box report regions") {
  const auto a = box_report(1.0, 3.0);
  CHECK(a.region == "degenerate-ray");
  CHECK(a.h_star.value.value() == doctest::Approx(-1.0).epsilon(1e-14));
  const auto b = box_report(0.0, 2.0);
  CHECK(b.region == "origin-ray");
  CHECK(b.empty_solution_set);
  CHECK(b.h_star.value == ExtReal::finite(0.0));
  CHECK(box_report(1.0, 2.0).region == "outside");
  CHECK(box_report(-1.0, 3.0).region == "outside");
  const auto c = box_report(1.0, 4.0);
  CHECK(c.region == "interior");
  CHECK(c.roundtrip_error <= 1e-10);
  CHECK(box_table().size() == 9);
}

TEST_CASE("gradient of h maps onto the interior of dom h* and round-trips") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> xd(-1.5, 1.5), yd(-2.5, -0.15);
  const BoxModel m{1.0};
  for (int i = 0; i < 12; ++i) {
    const double x = xd(rng), y = yd(rng);
    const auto [u, v] = m.grad_h(x, y);
    CHECK(u > 0.0);
    CHECK(v > 3.0 * u);
    const auto r = box_report(u, v);
    REQUIRE(r.dual);
    CHECK(r.dual->first == doctest::Approx(x).epsilon(1e-8));
    CHECK(r.dual->second == doctest::Approx(y).epsilon(1e-8));
  }
}

TEST_CASE("h is strictly convex along random segments") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> xd(-2.0, 2.0), yd(-3.0, -0.1);
  const BoxModel m{1.0};
  for (int i = 0; i < 30; ++i) {
    const double x1 = xd(rng), y1 = yd(rng), x2 = xd(rng), y2 = yd(rng);
    const double t = 0.4;
    const double mid = m.h((1 - t) * x1 + t * x2, (1 - t) * y1 + t * y2);
    CHECK(mid < (1 - t) * m.h(x1, y1) + t * m.h(x2, y2));
  }
}
