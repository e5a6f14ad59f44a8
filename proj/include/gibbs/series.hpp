#pragma once

// Certified evaluation of f^(p)(y) = sum_n sigma_n^p exp(sigma_n y).

#include "gibbs/errors.hpp"
#include "gibbs/sequences.hpp"
#include "gibbs/types.hpp"

namespace gibbs {

/// Default flattened-term budget: 10^7, or GIBBS_SERIES_MAX_TERMS when set.
Index default_max_terms();

struct EvalOptions {
  Index max_terms = default_max_terms();
};

/// Domain classification. For LogFam with theta > 1 this evaluates f(-1)
/// (and gamma for theta > 2) with certified tails at relative tolerance 1e-13.
DomainInfo domain_info(const SigmaSequence& seq, const EvalOptions& opts = {});

/// f^(p)(y) with tail_bound <= tol (absolute).
///
/// Admissible points: y < -alpha for any p; y = -alpha for p = 0 on a closed
/// boundary and for p = 1 when gamma is finite. Anything else throws
/// DomainError; an unreachable tolerance throws BudgetExceeded.
SeriesEval eval(const SigmaSequence& seq, double y, int p, double tol, const EvalOptions& opts = {});

/// f'(y)/f(y) at an interior point, relative error <= tol.
double phi(const SigmaSequence& seq, double y, double tol, const EvalOptions& opts = {});

/// ln f^(p)(y) with absolute error <= rel_tol (equivalently, relative error on
/// f^(p)), rel_tol floored at 64 ulp, the rounding floor of slowly convergent tails. Stays finite where exp(sigma_min y) underflows.
double log_eval(const SigmaSequence& seq, double y, int p, double rel_tol,
                const EvalOptions& opts = {});

/// Multiplicity of the lowest level (1 for every built-in family).
Index ground_multiplicity(const SigmaSequence& seq);

namespace detail {

/// Sum of sigma_n^p exp((sigma_n - sigma_min) y), the series rescaled by its
/// leading exponential. The true value lies in [value, value + width].
struct ScaledSum {
  double value = 0.0;
  double width = 0.0;
  Index terms = 0;
};

ScaledSum scaled_sum(const SigmaSequence& seq, double y, int p, double tol_scaled, Index max_terms);

/// Throws DomainError unless (y, p) is admissible for `info`.
void check_admissible(const SigmaSequence& seq, const DomainInfo& info, double y, int p);

/// Analytic part of domain_info: alpha and boundary class, no sums.
DomainInfo classify(const SigmaSequence& seq);

}  // namespace detail

}  // namespace gibbs
