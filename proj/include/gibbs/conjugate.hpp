#pragma once

// Legendre-Fenchel conjugates of exp, f, ln f and the box function
// h(x, y) = e^x f_box(y).

#include <optional>
#include <string_view>

#include "gibbs/extended_real.hpp"
#include "gibbs/series.hpp"

namespace gibbs {

enum class Regime {
  NegativeU,      // u < 0: +inf
  Zero,           // left end of the domain of the conjugate: value 0
  Interior,       // sup attained at an interior point
  BoundaryGamma,  // u = gamma < inf: sup attained at -alpha
  Plateau,        // u > gamma: affine with slope -alpha
  Infinite,       // +inf outside the domain for a reason other than u < 0
};

std::string_view to_string(Regime r) noexcept;

struct ConjugateValue {
  ExtReal value = ExtReal::pos_inf();
  Regime regime = Regime::Infinite;
  /// Point where the defining supremum is attained, when it is.
  std::optional<double> attaining_y;
  /// |g(attaining_y) - target| / max(1, target), g = f' or phi.
  double residual = 0.0;
  /// False when an open boundary was approached to the cap without reaching
  /// the target; value is then the (lower) estimate at the cap.
  bool converged = true;
};

/// exp*(u) = u(ln u - 1) for u >= 0 (0 ln 0 = 0), +inf for u < 0.
ExtReal exp_conjugate(double u);

/// f*(u) for the series f of `seq`. Throws DomainError for EmptyDomain.
/// u within tol*max(1, gamma) of a finite gamma is treated as u = gamma.
ConjugateValue conjugate(const SigmaSequence& seq, double u, double tol, const EvalOptions& opts = {});

/// (ln f)*(v): +inf below sigma_min (regime Infinite), 0 at sigma_min (Zero),
/// v y* - ln f(y*) with phi(y*) = v inside the range of phi (Interior), and
/// -alpha v - ln f(-alpha) for v >= sup phi = gamma / f(-alpha) (Plateau).
ConjugateValue log_f_conjugate(const SigmaSequence& seq, double v, double tol, const EvalOptions& opts = {});

/// h*(u, v) for h(x, y) = e^x (sum_k e^{kappa y k^2})^3, the box partition
/// function with energies kappa(k^2+l^2+m^2). attaining_y is the energy
/// multiplier y of the box function.
ConjugateValue box_conjugate(double u, double v, double tol, double kappa = 1.0,
                             const EvalOptions& opts = {});

}  // namespace gibbs
