#include "gibbs/conjugate.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "gibbs/inverse.hpp"

namespace gibbs {

namespace {

constexpr double kRelEval = 1e-15;
// v is snapped to sigma_min when within a few ulps of it.
constexpr double kSnapUlps = 8.0 * std::numeric_limits<double>::epsilon();

double f_mid(const SigmaSequence& seq, double y, const EvalOptions& opts) {
  return std::exp(log_eval(seq, y, 0, kRelEval, opts));
}

double boundary_mid(const ExtReal& v, double width) { return v.value() + 0.5 * width; }

}  // namespace

std::string_view to_string(Regime r) noexcept {
  switch (r) {
    case Regime::NegativeU: return "NegativeU";
    case Regime::Zero: return "Zero";
    case Regime::Interior: return "Interior";
    case Regime::BoundaryGamma: return "BoundaryGamma";
    case Regime::Plateau: return "Plateau";
    case Regime::Infinite: return "Infinite";
  }
  return "?";
}

ExtReal exp_conjugate(double u) {
  if (std::isnan(u)) throw std::invalid_argument("exp_conjugate: u is NaN");
  if (u < 0.0) return ExtReal::pos_inf();
  if (u == 0.0) return ExtReal::finite(0.0);
  if (std::isinf(u)) return ExtReal::pos_inf();
  return ExtReal::finite(u * (std::log(u) - 1.0));
}

ConjugateValue conjugate(const SigmaSequence& seq, double u, double tol, const EvalOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("conjugate: tol must be > 0");
  if (!std::isfinite(u)) throw std::invalid_argument("conjugate: u must be finite");
  const auto info = domain_info(seq, opts);
  if (info.boundary_class == BoundaryClass::EmptyDomain) {
    throw DomainError("EmptyDomain: f is identically +inf for " + seq.spec(), info);
  }
  ConjugateValue out;
  if (u < 0.0) {
    out.regime = Regime::NegativeU;
    return out;
  }
  if (u == 0.0) {
    out.value = ExtReal::finite(0.0);
    out.regime = Regime::Zero;
    return out;
  }
  if (info.gamma.is_finite()) {
    const double gamma = boundary_mid(info.gamma, info.gamma_tail_bound);
    if (u >= gamma - tol * std::max(1.0, gamma)) {
      const double fb = boundary_mid(info.f_at_boundary, info.f_at_boundary_tail_bound);
      out.value = ExtReal::finite(-info.alpha * u - fb);
      out.regime = std::fabs(u - gamma) <= tol * std::max(1.0, gamma) ? Regime::BoundaryGamma : Regime::Plateau;
      out.attaining_y = -info.alpha;
      if (out.regime == Regime::BoundaryGamma) out.residual = std::fabs(gamma - u) / std::max(1.0, u);
      return out;
    }
  }
  const auto r = solve_derivative(seq, u, opts);
  out.value = ExtReal::finite(r.y * u - f_mid(seq, r.y, opts));
  out.regime = Regime::Interior;
  out.attaining_y = r.y;
  out.residual = r.residual;
  out.converged = r.converged;
  return out;
}

ConjugateValue log_f_conjugate(const SigmaSequence& seq, double v, double tol, const EvalOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("log_f_conjugate: tol must be > 0");
  if (!std::isfinite(v)) throw std::invalid_argument("log_f_conjugate: v must be finite");
  const auto info = domain_info(seq, opts);
  if (info.boundary_class == BoundaryClass::EmptyDomain) {
    throw DomainError("EmptyDomain: ln f is identically +inf for " + seq.spec(), info);
  }
  const double s_min = sigma_min(seq);
  ConjugateValue out;
  if (std::fabs(v - s_min) <= kSnapUlps * std::max(1.0, s_min)) {
    out.value = ExtReal::finite(0.0 - std::log(static_cast<double>(ground_multiplicity(seq))));
    out.regime = Regime::Zero;
    return out;
  }
  if (v < s_min) {
    out.regime = Regime::Infinite;
    return out;
  }
  if (info.gamma.is_finite()) {
    const double gamma = boundary_mid(info.gamma, info.gamma_tail_bound);
    const double fb = boundary_mid(info.f_at_boundary, info.f_at_boundary_tail_bound);
    const double sup_phi = gamma / fb;
    if (v >= sup_phi - tol * std::max(1.0, sup_phi)) {
      out.value = ExtReal::finite(-info.alpha * v - std::log(fb));
      out.regime = Regime::Plateau;
      out.attaining_y = -info.alpha;
      return out;
    }
  }
  const auto r = solve_phi(seq, v, opts);
  out.value = ExtReal::finite(v * r.y - log_eval(seq, r.y, 0, kRelEval, opts));
  out.regime = Regime::Interior;
  out.attaining_y = r.y;
  out.residual = r.residual;
  out.converged = r.converged;
  return out;
}

ConjugateValue box_conjugate(double u, double v, double tol, double kappa, const EvalOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("box_conjugate: tol must be > 0");
  if (!(kappa > 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("box_conjugate: kappa must be > 0");
  if (!std::isfinite(u) || !std::isfinite(v)) throw std::invalid_argument("box_conjugate: u, v must be finite");
  ConjugateValue out;
  if (u < 0.0) {
    out.regime = Regime::NegativeU;
    return out;
  }
  if (v < 0.0) return out;
  if (u == 0.0) {
    out.value = ExtReal::finite(0.0);
    out.regime = Regime::Zero;
    return out;
  }
  const double w = v / (3.0 * kappa * u);
  const auto g = log_f_conjugate(SigmaSequence::quadratic(), w, tol, opts);
  if (!g.value.is_finite()) return out;
  out.value = ExtReal::finite(u * (std::log(u) - 1.0) + 3.0 * u * g.value.value());
  // Degenerate ray v = 3 kappa u keeps the regime tag Zero of the inner conjugate.
  out.regime = g.regime;
  if (g.attaining_y) out.attaining_y = *g.attaining_y / kappa;
  out.residual = g.residual;
  out.converged = g.converged;
  return out;
}

}  // namespace gibbs
