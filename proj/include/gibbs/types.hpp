#pragma once

#include <cstdint>
#include <string_view>

#include "gibbs/extended_real.hpp"

namespace gibbs {

/// How dom f ends at -alpha.
enum class BoundaryClass {
  EmptyDomain,          // dom f is empty
  OpenBoundary,         // dom f = (-inf, -alpha), gamma = inf
  ClosedInfiniteSlope,  // dom f = (-inf, -alpha], left slope at -alpha infinite
  ClosedFiniteSlope,    // dom f = (-inf, -alpha], gamma < inf
};

std::string_view to_string(BoundaryClass c) noexcept;

struct DomainInfo {
  /// dom f is contained in (-inf, -alpha]. +inf for EmptyDomain.
  double alpha = 0.0;
  BoundaryClass boundary_class = BoundaryClass::OpenBoundary;
  /// gamma = sum sigma_n exp(-sigma_n alpha): the left derivative at the boundary.
  ExtReal gamma = ExtReal::pos_inf();
  ExtReal f_at_boundary = ExtReal::pos_inf();
  /// Certified widths for the finite entries above (true value in [v, v + width]).
  double gamma_tail_bound = 0.0;
  double f_at_boundary_tail_bound = 0.0;
};

/// Certified value of f^(p)(y): the true value lies in [value, value + tail_bound].
///
/// `value` is the compensated partial sum over the first `truncation_index`
/// terms plus, for families with an integral-comparison certificate, the
/// certified lower edge of the omitted tail.
struct SeriesEval {
  double value = 0.0;
  int derivative_order = 0;
  std::int64_t truncation_index = 0;
  double tail_bound = 0.0;
  double requested_tol = 0.0;
};

}  // namespace gibbs
