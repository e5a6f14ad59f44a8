#pragma once

// Monotone inverses of f' and phi = f'/f on the interior (-inf, -alpha).

#include "gibbs/series.hpp"

namespace gibbs {

struct InverseResult {
  double y = 0.0;
  /// |g(y) - target| / max(1, target) for the inverted function g.
  double residual = 0.0;
  /// False when the upper bracket hit the near-boundary cap (or the term
  /// budget) before g exceeded the target; y is then the closest point reached.
  bool converged = true;
  int iterations = 0;
};

/// Solves f'(y) = u for u in (0, gamma).
InverseResult solve_derivative(const SigmaSequence& seq, double u, const EvalOptions& opts = {});

/// Solves phi(y) = rho for rho in (sigma_min, sup phi).
InverseResult solve_phi(const SigmaSequence& seq, double rho, const EvalOptions& opts = {});

/// Closest admissible interior point used for open boundaries.
inline constexpr double kBoundaryOffset = 1e-12;

}  // namespace gibbs
