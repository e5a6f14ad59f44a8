#pragma once

// Brute-force and finite-difference cross-checks.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gibbs/conjugate.hpp"
#include "gibbs/sequences.hpp"
#include "gibbs/series.hpp"

namespace gibbs {

struct VerificationReport {
  std::string claim;
  std::vector<std::pair<std::string, std::string>> parameters;
  std::vector<double> lhs;
  std::vector<double> rhs;
  double abs_gap = 0.0;
  /// abs_gap / max(1, max |rhs|)
  double rel_gap = 0.0;
  double tolerance = 0.0;
  /// rel_gap <= tolerance
  bool passed = false;
  std::vector<std::pair<std::string, double>> metadata;
};

/// Sets abs_gap/rel_gap from lhs - rhs (max norm) and passed from tolerance.
void finalize(VerificationReport& r);

/// Moment targets of the truncated primal: sum sigma_n u_n = energy and,
/// when present, sum u_n = mass.
struct MomentTargets {
  double energy = 0.0;
  std::optional<double> mass;
};

struct PrimalResult {
  double value = 0.0;
  std::vector<double> weights;
  std::optional<double> dual_x;
  double dual_y = 0.0;
  int iterations = 0;
  /// max moment residual, relative to max(1, target)
  double residual = 0.0;
};

/// min sum_{n<=N} u_n (ln u_n - 1) under the targets, over the first N
/// states, by damped Newton on the 1- or 2-variable dual. Throws Infeasible
/// naming the violated range.
PrimalResult primal_truncated(const SigmaSequence& seq, Index N, const MomentTargets& targets, double tol);

/// Default central-difference step 1e-5 max(1, |y|).
double default_step(double y);

/// Central differences of f against the series for f', plus the one-sided
/// directional derivatives f'_+(y; +1) = f'(y) and f'_+(y; -1) = -f'(y).
VerificationReport check_gradient_sum(const SigmaSequence& seq, double y, double h, double tol);

/// Central differences of h(x, y) = e^x f_box(y) (box series) against
/// (e^x g^3, 3 kappa e^x g^2 g') built from the one-dimensional series g.
VerificationReport check_gradient_sum_box(double x, double y, double h, double tol, double kappa = 1.0);

/// f(y) + f*(u) - y u >= -tol. lhs = {gap}, rhs = {0}; abs_gap is the
/// violation max(0, -gap - tol). Metadata records |f'(y) - u|.
VerificationReport check_fenchel_young(const SigmaSequence& seq, double y, double u, double tol);

struct AlternatingGradient {
  double first = 0.0;   // sum_{n<=N} n e^{nx}
  double second = 0.0;  // sum_{n<=N} (-1)^n varsigma_n e^{nx}
  bool convergent = false;
  std::string rule;
  /// Closed-form limit of (first, second) when available.
  std::optional<std::pair<double, double>> reference;
  /// log of the magnitude of the last term of the second component.
  double last_term_log = 0.0;
};

AlternatingGradient alternating_gradient_series(double x, const VarsigmaSequence& vs, Index N);

/// Closed forms for sigma_n = n: f, f', f''.
double linear_f(double x);
double linear_f1(double x);
double linear_f2(double x);

}  // namespace gibbs
