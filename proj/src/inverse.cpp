#include "gibbs/inverse.hpp"

#include <boost/math/tools/toms748_solve.hpp>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace gibbs {

namespace {

constexpr double kEvalRelTol = 1e-14;

// Root of the increasing function log_g(y) - log_target on (-inf, -alpha).
// Brackets by geometric expansion, then TOMS 748.
InverseResult solve_increasing(const std::function<double(double)>& log_g, double log_target, double alpha,
                               const char* what) {
  auto G = [&](double y) { return log_g(y) - log_target; };
  const double boundary = -alpha;

  double lo = boundary - 1.0;
  double g_lo = G(lo);
  double hi = lo;
  double g_hi = g_lo;
  InverseResult out;

  if (g_lo > 0.0) {
    // Expand downwards.
    double step = 1.0;
    while (g_lo > 0.0) {
      hi = lo;
      g_hi = g_lo;
      step *= 2.0;
      lo = boundary - step;
      if (!std::isfinite(lo)) {
        throw NumericError(std::string(what) + ": lower bracket diverged; target below the range");
      }
      g_lo = G(lo);
    }
  } else {
    // Expand towards the boundary: y_k = -alpha - 2^-k, capped at -alpha - 1e-12.
    double offset = 1.0;
    bool capped = false;
    while (g_hi <= 0.0) {
      lo = hi;
      g_lo = g_hi;
      if (capped) {
        out.y = hi;
        out.converged = false;
        out.residual = -std::expm1(g_hi);
        return out;
      }
      offset *= 0.5;
      if (offset <= kBoundaryOffset) {
        offset = kBoundaryOffset;
        capped = true;
      }
      const double candidate = boundary - offset;
      try {
        g_hi = G(candidate);
        hi = candidate;
      } catch (const BudgetExceeded&) {
        out.y = lo;
        out.converged = false;
        out.residual = -std::expm1(g_lo);
        return out;
      }
    }
  }
  if (g_lo == 0.0) return {lo, 0.0, true, 0};
  if (g_hi == 0.0) return {hi, 0.0, true, 0};

  std::uintmax_t max_iter = 200;
  const auto root = boost::math::tools::toms748_solve(G, lo, hi, g_lo, g_hi,
                                                      boost::math::tools::eps_tolerance<double>(50), max_iter);
  if (max_iter >= 200) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": TOMS748 did not converge in bracket [" << root.first << ", " << root.second << "]";
    throw NumericError(os.str());
  }
  out.y = 0.5 * (root.first + root.second);
  out.iterations = static_cast<int>(max_iter);
  // Residual on the log scale is the relative residual of g.
  out.residual = std::fabs(std::expm1(G(out.y)));
  return out;
}

}  // namespace

InverseResult solve_derivative(const SigmaSequence& seq, double u, const EvalOptions& opts) {
  if (!(u > 0.0) || !std::isfinite(u)) throw std::invalid_argument("solve_derivative: u must be positive");
  const auto info = detail::classify(seq);
  auto log_g = [&](double y) { return log_eval(seq, y, 1, kEvalRelTol, opts); };
  auto r = solve_increasing(log_g, std::log(u), info.alpha, "solve_derivative");
  // Relative residual -> |f'(y) - u| / max(1, u).
  r.residual *= u / std::max(1.0, u);
  return r;
}

InverseResult solve_phi(const SigmaSequence& seq, double rho, const EvalOptions& opts) {
  const double s_min = sigma_min(seq);
  if (!(rho > s_min) || !std::isfinite(rho)) {
    throw std::invalid_argument("solve_phi: rho must exceed the smallest exponent");
  }
  const auto info = detail::classify(seq);
  auto log_g = [&](double y) {
    return log_eval(seq, y, 1, kEvalRelTol, opts) - log_eval(seq, y, 0, kEvalRelTol, opts);
  };
  auto r = solve_increasing(log_g, std::log(rho), info.alpha, "solve_phi");
  r.residual *= rho / std::max(1.0, rho);
  return r;
}

}  // namespace gibbs
