#include "gibbs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "gibbs/errors.hpp"
#include "neumaier.hpp"

namespace gibbs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string num(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::vector<double> support_sigmas(const SigmaSequence& seq, Index N) {
  std::vector<double> s;
  s.reserve(static_cast<std::size_t>(N));
  if (seq.family() == Family::BoxTriple) {
    for (const auto& st : enumerate_box(seq.parameter(), static_cast<std::size_t>(N))) s.push_back(st.sigma);
    return s;
  }
  for (Index n = seq.start_index(); n < seq.start_index() + N; ++n) s.push_back(sigma(seq, n));
  return s;
}

// ln sum_n sigma_n^k e^{x + sigma_n y}, via the largest exponent.
double log_moment(const std::vector<double>& s, double x, double y, int k) {
  double m = -kInf;
  for (double sn : s) m = std::max(m, x + sn * y + (k ? k * std::log(sn) : 0.0));
  detail::Neumaier acc;
  for (double sn : s) acc.add(std::exp(x + sn * y + (k ? k * std::log(sn) : 0.0) - m));
  return m + std::log(acc.value());
}

double entropy_of(const std::vector<double>& s, double x, double y, std::vector<double>& w) {
  detail::Neumaier acc;
  w.resize(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double lw = x + s[i] * y;
    w[i] = std::exp(lw);
    acc.add(w[i] * (lw - 1.0));
  }
  return acc.value();
}

PrimalResult primal_energy_only(const std::vector<double>& s, double u, double tol) {
  PrimalResult r;
  const double lu = std::log(u);
  auto G = [&](double y) { return log_moment(s, 0.0, y, 1) - lu; };
  double y = 0.0;
  double g = G(y);
  for (; r.iterations < 500 && std::fabs(g) > 0.25 * tol; ++r.iterations) {
    const double slope = std::exp(log_moment(s, 0.0, y, 2) - log_moment(s, 0.0, y, 1));
    double step = -g / slope;
    double trial = y + step;
    double g_trial = G(trial);
    while (!(std::fabs(g_trial) < std::fabs(g)) && std::fabs(step) > 1e-300) {
      step *= 0.5;
      trial = y + step;
      g_trial = G(trial);
    }
    if (trial == y) break;
    y = trial;
    g = g_trial;
  }
  r.dual_y = y;
  r.value = entropy_of(s, 0.0, y, r.weights);
  r.residual = std::fabs(std::expm1(g)) * u / std::max(1.0, u);
  if (r.residual > tol) {
    throw NumericError("primal_truncated: Newton stalled with relative residual " + num(r.residual));
  }
  return r;
}

PrimalResult primal_two_moments(const std::vector<double>& s, double u, double v, double tol) {
  PrimalResult r;
  // Dual D(x, y) = sum e^{x + sigma y} - x u - y v, convex.
  auto D = [&](double x, double y) { return std::exp(log_moment(s, x, y, 0)) - x * u - y * v; };
  double y = 0.0;
  double x = std::log(u) - log_moment(s, 0.0, 0.0, 0);
  auto residual = [&](double xx, double yy) {
    const double r0 = std::fabs(std::exp(log_moment(s, xx, yy, 0)) - u) / std::max(1.0, u);
    const double r1 = std::fabs(std::exp(log_moment(s, xx, yy, 1)) - v) / std::max(1.0, v);
    return std::max(r0, r1);
  };
  for (; r.iterations < 500 && residual(x, y) > 0.25 * tol; ++r.iterations) {
    const double S0 = std::exp(log_moment(s, x, y, 0));
    const double S1 = std::exp(log_moment(s, x, y, 1));
    const double S2 = std::exp(log_moment(s, x, y, 2));
    const double g0 = S0 - u, g1 = S1 - v;
    const double det = S0 * S2 - S1 * S1;
    if (!(det > 0.0)) throw NumericError("primal_truncated: singular dual Hessian");
    const double dx = -(S2 * g0 - S1 * g1) / det;
    const double dy = -(S0 * g1 - S1 * g0) / det;
    const double d0 = D(x, y);
    const double slope = g0 * dx + g1 * dy;
    double t = 1.0;
    while (t > 1e-20 && !(D(x + t * dx, y + t * dy) <= d0 + 1e-4 * t * slope)) t *= 0.5;
    if (t <= 1e-20) break;
    x += t * dx;
    y += t * dy;
  }
  r.dual_x = x;
  r.dual_y = y;
  r.value = entropy_of(s, x, y, r.weights);
  r.residual = residual(x, y);
  if (r.residual > tol) {
    throw NumericError("primal_truncated: Newton stalled with relative residual " + num(r.residual));
  }
  return r;
}

}  // namespace

void finalize(VerificationReport& r) {
  double gap = 0.0, scale = 1.0;
  for (std::size_t i = 0; i < std::min(r.lhs.size(), r.rhs.size()); ++i) {
    gap = std::max(gap, std::fabs(r.lhs[i] - r.rhs[i]));
    scale = std::max(scale, std::fabs(r.rhs[i]));
  }
  r.abs_gap = gap;
  r.rel_gap = gap / scale;
  r.passed = r.rel_gap <= r.tolerance;
}

PrimalResult primal_truncated(const SigmaSequence& seq, Index N, const MomentTargets& targets, double tol) {
  if (N < 2) throw std::invalid_argument("primal_truncated: N must be >= 2");
  if (!(tol > 0.0)) throw std::invalid_argument("primal_truncated: tol must be > 0");
  const auto s = support_sigmas(seq, N);
  const double v = targets.energy;
  if (!targets.mass) {
    if (v < 0.0) throw Infeasible("primal_truncated: energy target " + num(v) + " outside the feasible range [0, inf)");
    if (v == 0.0) {
      PrimalResult r;
      r.weights.assign(s.size(), 0.0);
      r.dual_y = -kInf;
      return r;
    }
    return primal_energy_only(s, v, tol);
  }
  const double u = *targets.mass;
  if (u < 0.0 || v < 0.0) throw Infeasible("primal_truncated: moment targets (" + num(u) + ", " + num(v) + ") outside the feasible range [0, inf)^2");
  const auto [lo, hi] = std::minmax_element(s.begin(), s.end());
  if (u == 0.0) {
    if (v != 0.0) throw Infeasible("primal_truncated: mass 0 forces energy 0, got " + num(v) + " outside the range {0}");
    PrimalResult r;
    r.weights.assign(s.size(), 0.0);
    return r;
  }
  const double rho = v / u;
  if (rho < *lo || rho > *hi) {
    throw Infeasible("primal_truncated: v/u = " + num(rho) + " outside [" + num(*lo) + ", " + num(*hi) +
                     "] for the first " + std::to_string(N) + " states");
  }
  if (rho == *lo || rho == *hi) {
    PrimalResult r;
    const double edge = rho == *lo ? *lo : *hi;
    const auto k = static_cast<double>(std::count(s.begin(), s.end(), edge));
    r.weights.assign(s.size(), 0.0);
    detail::Neumaier acc;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == edge) {
        r.weights[i] = u / k;
        acc.add(r.weights[i] * (std::log(r.weights[i]) - 1.0));
      }
    }
    r.value = acc.value();
    r.dual_y = rho == *lo ? -kInf : kInf;
    return r;
  }
  return primal_two_moments(s, u, v, tol);
}

double default_step(double y) { return 1e-5 * std::max(1.0, std::fabs(y)); }

VerificationReport check_gradient_sum(const SigmaSequence& seq, double y, double h, double tol) {
  const auto info = detail::classify(seq);
  if (!(y + 2.0 * h < -info.alpha)) throw DomainError("check_gradient_sum: stencil leaves the interior", info);
  auto F = [&](double z) { return std::exp(log_eval(seq, z, 0, 1e-15)); };
  const double f1 = std::exp(log_eval(seq, y, 1, 1e-15));
  const double f0 = F(y);
  const double fp = F(y + h), fm = F(y - h);
  VerificationReport r;
  r.claim = "gradient-sum";
  r.parameters = {{"seq", seq.spec()}, {"y", num(y)}, {"h", num(h)}};
  r.lhs = {(fp - fm) / (2.0 * h), (-3.0 * f0 + 4.0 * fp - F(y + 2.0 * h)) / (2.0 * h),
           (-3.0 * f0 + 4.0 * fm - F(y - 2.0 * h)) / (2.0 * h)};
  r.rhs = {f1, f1, -f1};
  r.tolerance = tol;
  r.metadata = {{"step", h}, {"truncation_index", static_cast<double>(eval(seq, y, 1, 1e-15 * f1).truncation_index)}};
  finalize(r);
  return r;
}

VerificationReport check_gradient_sum_box(double x, double y, double h, double tol, double kappa) {
  const auto box = SigmaSequence::box(kappa);
  const auto quad = SigmaSequence::quadratic();
  if (!(y + h < 0.0)) throw DomainError("check_gradient_sum_box: stencil leaves the interior", detail::classify(box));
  auto H = [&](double xx, double yy) { return std::exp(xx + log_eval(box, yy, 0, 1e-15)); };
  const double lg = log_eval(quad, kappa * y, 0, 1e-15);
  const double lg1 = log_eval(quad, kappa * y, 1, 1e-15);
  VerificationReport r;
  r.claim = "gradient-sum-box";
  r.parameters = {{"x", num(x)}, {"y", num(y)}, {"h", num(h)}, {"kappa", num(kappa)}};
  r.lhs = {(H(x + h, y) - H(x - h, y)) / (2.0 * h), (H(x, y + h) - H(x, y - h)) / (2.0 * h)};
  r.rhs = {std::exp(x + 3.0 * lg), 3.0 * kappa * std::exp(x + 2.0 * lg + lg1)};
  r.tolerance = tol;
  r.metadata = {{"step", h}};
  finalize(r);
  return r;
}

VerificationReport check_fenchel_young(const SigmaSequence& seq, double y, double u, double tol) {
  VerificationReport r;
  r.claim = "fenchel-young";
  r.parameters = {{"seq", seq.spec()}, {"y", num(y)}, {"u", num(u)}};
  r.tolerance = tol;
  const auto c = conjugate(seq, u, 1e-12);
  const double f = std::exp(log_eval(seq, y, 0, 1e-15));
  const double f1 = std::exp(log_eval(seq, y, 1, 1e-15));
  const double gap = c.value.is_finite() ? f + c.value.value() - y * u : kInf;
  r.lhs = {gap};
  r.rhs = {0.0};
  r.abs_gap = std::max(0.0, -gap);
  r.rel_gap = r.abs_gap;
  r.passed = r.abs_gap <= tol;
  r.metadata = {{"gap", gap}, {"slope_mismatch", std::fabs(f1 - u)}, {"conjugate_residual", c.residual}};
  return r;
}

double linear_f(double x) { return std::exp(x) / -std::expm1(x); }
double linear_f1(double x) {
  const double d = -std::expm1(x);
  return std::exp(x) / (d * d);
}
double linear_f2(double x) {
  const double d = -std::expm1(x);
  return std::exp(x) * (1.0 + std::exp(x)) / (d * d * d);
}

AlternatingGradient alternating_gradient_series(double x, const VarsigmaSequence& vs, Index N) {
  if (!(x < 0.0)) throw std::invalid_argument("alternating_gradient_series: x must be < 0");
  if (N < 1) throw std::invalid_argument("alternating_gradient_series: N must be >= 1");
  AlternatingGradient out;
  detail::Neumaier a, b;
  for (Index n = 1; n <= N; ++n) {
    const double nd = static_cast<double>(n);
    a.add(nd * std::exp(nd * x));
    out.last_term_log = vs.log_value(n) + nd * x;
    b.add((n % 2 == 0 ? 1.0 : -1.0) * std::exp(out.last_term_log));
  }
  out.first = a.value();
  out.second = b.value();
  switch (vs.kind()) {
    case VarsigmaSequence::Kind::PowerK:
      out.convergent = true;
      out.rule = "n^k e^{nx} summable for x < 0";
      if (vs.parameter() == 2.0) out.reference = std::make_pair(linear_f1(x), 8.0 * linear_f2(2.0 * x) - linear_f2(x));
      break;
    case VarsigmaSequence::Kind::ExpAlpha: {
      const double s = x + vs.parameter();
      out.convergent = s < 0.0;
      out.rule = "convergent iff x + alpha < 0 (x + alpha = " + num(s) + ")";
      if (out.convergent) out.reference = std::make_pair(linear_f1(x), -std::exp(s) / (1.0 + std::exp(s)));
      break;
    }
    case VarsigmaSequence::Kind::ExpSquare:
      out.convergent = false;
      out.rule = "e^{n^2 + nx} -> inf";
      break;
  }
  return out;
}

}  // namespace gibbs
