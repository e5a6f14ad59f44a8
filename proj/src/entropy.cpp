#include "gibbs/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include "gibbs/inverse.hpp"
#include "neumaier.hpp"

namespace gibbs {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kInf = std::numeric_limits<double>::infinity();

bool near(double a, double b, double rel) { return std::fabs(a - b) <= rel * std::max(1.0, std::fabs(b)); }

double xlogx_minus_x(double w) { return w > 0.0 ? w * (std::log(w) - 1.0) : 0.0; }

DomainInfo nonempty_info(const SigmaSequence& seq, const EvalOptions& opts) {
  auto info = domain_info(seq, opts);
  if (info.boundary_class == BoundaryClass::EmptyDomain) {
    throw DomainError("EmptyDomain: no Gibbs law exists for " + seq.spec(), info);
  }
  return info;
}

double mid(const ExtReal& v, double width) { return v.value() + 0.5 * width; }

GibbsFit infeasible(std::string reason) {
  GibbsFit fit;
  fit.status = FitStatus::Infeasible;
  fit.reason = std::move(reason);
  return fit;
}

GibbsFit zero_law() {
  GibbsFit fit;
  fit.status = FitStatus::InteriorUnique;
  fit.reason = "zero sequence";
  fit.entropy = ExtReal::finite(0.0);
  return fit;
}

// Weights e^{x + sigma_n y} on the first `count` states.
std::vector<Weight> law_prefix(const SigmaSequence& seq, double x, double y, Index count) {
  std::vector<Weight> out;
  out.reserve(static_cast<std::size_t>(count));
  if (seq.family() == Family::BoxTriple) {
    const auto states = enumerate_box(seq.parameter(), static_cast<std::size_t>(count));
    Index n = 1;
    for (const auto& st : states) out.push_back({n++, st.triple, std::exp(x + st.sigma * y)});
    return out;
  }
  for (Index n = seq.start_index(); n < seq.start_index() + count; ++n) {
    out.push_back({n, std::nullopt, std::exp(x + sigma(seq, n) * y)});
  }
  return out;
}

// Moments and materialized prefix of the law e^{x + sigma_n y}.
void fill_law(const SigmaSequence& seq, double x, double y, double tol, const FitOptions& opts, GibbsFit& fit) {
  const double scale = std::exp(x);
  const double ftol = std::max(tol / scale, std::numeric_limits<double>::min());
  const auto f0 = eval(seq, y, 0, ftol, opts);
  const auto f1 = eval(seq, y, 1, ftol, opts);
  fit.mass = {scale * (f0.value + 0.5 * f0.tail_bound), 0.5 * scale * f0.tail_bound};
  fit.energy = {scale * (f1.value + 0.5 * f1.tail_bound), 0.5 * scale * f1.tail_bound};
  fit.weights = law_prefix(seq, x, y, std::min(f0.truncation_index, opts.max_weights));
  detail::Neumaier prefix;
  for (const auto& w : fit.weights) prefix.add(w.value);
  fit.tail_mass_bound = std::max(0.0, scale * (f0.value + f0.tail_bound) - prefix.value());
}

}  // namespace

std::string_view to_string(FitStatus s) noexcept {
  switch (s) {
    case FitStatus::InteriorUnique: return "InteriorUnique";
    case FitStatus::BoundarySingleton: return "BoundarySingleton";
    case FitStatus::PlateauNonAttained: return "PlateauNonAttained";
    case FitStatus::Infeasible: return "Infeasible";
  }
  return "?";
}

GibbsFit min_entropy_moment(const SigmaSequence& seq, double u, double tol, const FitOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("min_entropy_moment: tol must be > 0");
  if (!std::isfinite(u)) throw std::invalid_argument("min_entropy_moment: u must be finite");
  const auto info = nonempty_info(seq, opts);
  if (u < 0.0) return infeasible("u < 0: a nonnegative sequence has nonnegative energy");
  if (u == 0.0) return zero_law();

  GibbsFit fit;
  double y = 0.0;
  if (info.gamma.is_finite()) {
    const double gamma = mid(info.gamma, info.gamma_tail_bound);
    if (near(u, gamma, tol)) {
      y = -info.alpha;
      fit.reason = "u = gamma: minimizer e^{-sigma_n alpha}";
    } else if (u > gamma) {
      fit.status = FitStatus::PlateauNonAttained;
      fit.reason = "u > gamma: infimum -alpha u - f(-alpha) is not attained";
      fit.entropy = conjugate(seq, u, tol, opts).value;
      return fit;
    }
  }
  if (fit.reason.empty()) {
    const auto r = solve_derivative(seq, u, opts);
    y = r.y;
    fit.converged = r.converged;
    fit.reason = r.converged ? "f'(y) = u" : "near-boundary cap reached before f'(y) = u";
  }
  fit.status = FitStatus::InteriorUnique;
  fit.dual_y = y;
  fill_law(seq, 0.0, y, tol, opts, fit);
  fit.entropy = ExtReal::finite(y * fit.energy.value - fit.mass.value);
  return fit;
}

GibbsFit fit_gibbs(const SigmaSequence& seq, double u, double v, double tol, const FitOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("fit_gibbs: tol must be > 0");
  if (!std::isfinite(u) || !std::isfinite(v)) throw std::invalid_argument("fit_gibbs: u, v must be finite");
  const auto info = nonempty_info(seq, opts);
  if (u < 0.0) return infeasible("u < 0");
  if (v < 0.0) return infeasible("v < 0");
  if (u == 0.0) {
    if (v == 0.0) return zero_law();
    auto fit = infeasible("S(0, v) is empty for v > 0; the conjugate still takes the value h*(0, v) = 0");
    return fit;
  }
  const double rho = v / u;
  const double s_min = sigma_min(seq);
  if (near(rho, s_min, 8.0 * kEps)) {
    if (ground_multiplicity(seq) != 1) return infeasible("v/u = sigma_min on a degenerate ground level");
    GibbsFit fit;
    fit.status = FitStatus::BoundarySingleton;
    fit.reason = "v/u = sigma_min: all mass on the ground level";
    Weight w{seq.start_index(), std::nullopt, u};
    if (seq.family() == Family::BoxTriple) w.triple = std::array<int, 3>{1, 1, 1};
    fit.weights.push_back(w);
    fit.mass = {u, 0.0};
    fit.energy = {u * s_min, 0.0};
    fit.entropy = ExtReal::finite(u * (std::log(u) - 1.0));
    return fit;
  }
  if (rho < s_min) return infeasible("v/u is below sigma_min");

  GibbsFit fit;
  double y = 0.0;
  bool boundary = false;
  if (info.gamma.is_finite()) {
    const double gamma = mid(info.gamma, info.gamma_tail_bound);
    const double fb = mid(info.f_at_boundary, info.f_at_boundary_tail_bound);
    const double sup_phi = gamma / fb;
    if (near(rho, sup_phi, tol)) {
      y = -info.alpha;
      boundary = true;
      fit.reason = "v/u = sup phi: law at y = -alpha";
    } else if (rho > sup_phi) {
      fit.status = FitStatus::PlateauNonAttained;
      fit.reason = "v/u > sup phi = gamma/f(-alpha): infimum is not attained";
      const auto lc = log_f_conjugate(seq, rho, tol, opts);
      fit.entropy = ExtReal::finite(u * (std::log(u) - 1.0) + u * lc.value.value());
      return fit;
    }
  }
  if (!boundary) {
    const auto r = solve_phi(seq, rho, opts);
    y = r.y;
    fit.converged = r.converged;
    fit.reason = r.converged ? "phi(y) = v/u" : "near-boundary cap reached before phi(y) = v/u";
  }
  const double x = std::log(u) - log_eval(seq, y, 0, 1e-15, opts);
  fit.status = FitStatus::InteriorUnique;
  fit.dual_x = x;
  fit.dual_y = y;
  fill_law(seq, x, y, tol, opts, fit);
  fit.entropy = ExtReal::finite((x - 1.0) * fit.mass.value + y * fit.energy.value);
  return fit;
}

// ---- plateau witnesses -------------------------------------------------------

namespace {

struct PlateauSetup {
  double alpha = 0.0;
  double target = 0.0;
  double gamma = 0.0;
};

PlateauSetup plateau_setup(const SigmaSequence& seq, const EvalOptions& opts) {
  const auto info = nonempty_info(seq, opts);
  if (info.boundary_class != BoundaryClass::ClosedFiniteSlope) {
    throw DomainError("gamma = inf for " + seq.spec() + ": there is no plateau", info);
  }
  PlateauSetup s;
  s.alpha = info.alpha;
  s.gamma = mid(info.gamma, info.gamma_tail_bound);
  s.target = mid(info.f_at_boundary, info.f_at_boundary_tail_bound);
  return s;
}

// Core of plateau_window over precomputed window exponents.
PlateauWindow window_impl(std::span<const double> prefix_sigma, std::span<const double> window_sigma, double u,
                          double alpha, double target, Index n, double lambda_start) {
  PlateauWindow w;
  w.n = n;
  w.q = static_cast<Index>(window_sigma.size());
  detail::Neumaier prefix_entropy, prefix_moment;
  for (double s : prefix_sigma) {
    const double e = std::exp(-s * alpha);
    prefix_entropy.add(e * (-s * alpha - 1.0));
    prefix_moment.add(s * e);
  }
  const double v = u - prefix_moment.value();

  // ln S(lambda) - ln v is convex and decreasing; Newton from the left is monotone.
  auto G = [&](double lambda, double* slope) {
    detail::Neumaier s0, s1;
    for (double s : window_sigma) {
      const double e = s * std::exp(-s * lambda);
      s0.add(e);
      s1.add(s * e);
    }
    if (slope) *slope = -s1.value() / s0.value();
    return std::log(s0.value()) - std::log(v);
  };
  double lambda = lambda_start;
  double slope = 0.0;
  double g = G(lambda, &slope);
  if (g < 0.0) {
    lambda = 0.0;
    g = G(lambda, &slope);
  }
  for (int it = 0; it < 200 && g > 0.0; ++it) {
    const double step = -g / slope;
    lambda += step;
    ++w.newton_iterations;
    g = G(lambda, &slope);
    if (step <= 4.0 * kEps * std::max(1.0, lambda)) break;
  }
  w.lambda = lambda;

  detail::Neumaier ent, mom;
  for (std::size_t i = 0; i + 1 < window_sigma.size(); ++i) {
    const double s = window_sigma[i];
    ent.add(std::exp(-s * lambda) * (-s * lambda - 1.0));
    mom.add(s * std::exp(-s * lambda));
  }
  const double s_last = window_sigma.back();
  const double residual = v - mom.value();
  w.last_weight = std::max(0.0, residual / s_last);
  w.moment_adjustment = std::fabs(residual - s_last * std::exp(-s_last * lambda));
  ent.add(xlogx_minus_x(w.last_weight));
  w.entropy = prefix_entropy.value() + ent.value();
  w.gap = w.entropy - (-alpha * u - target);
  return w;
}

Index window_start(const SigmaSequence& seq, double u) {
  Index n = seq.start_index();
  while (sigma(seq, n) < u) ++n;
  return n - 1;
}

std::vector<double> sigmas(const SigmaSequence& seq, Index from, Index to) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(std::max<Index>(0, to - from + 1)));
  for (Index k = from; k <= to; ++k) out.push_back(sigma(seq, k));
  return out;
}

}  // namespace

PlateauWindow plateau_window(const SigmaSequence& seq, double u, Index n, Index q, double lambda_start,
                             const EvalOptions& opts) {
  const auto setup = plateau_setup(seq, opts);
  if (!(u > setup.gamma)) throw std::invalid_argument("plateau_window: u must exceed gamma");
  if (q < 1) throw std::invalid_argument("plateau_window: q must be >= 1");
  if (n < seq.start_index() - 1) throw std::invalid_argument("plateau_window: n below the start index");
  if (sigma(seq, n + 1) < u) throw std::invalid_argument("plateau_window: sigma_{n+1} must be >= u");
  const auto pre = sigmas(seq, seq.start_index(), n);
  const auto win = sigmas(seq, n + 1, n + q);
  return window_impl(pre, win, u, setup.alpha, setup.target, n, lambda_start);
}

std::vector<Weight> materialize(const SigmaSequence& seq, const PlateauWindow& w) {
  const auto info = domain_info(seq);
  std::vector<Weight> out;
  for (Index k = seq.start_index(); k <= w.n; ++k) out.push_back({k, std::nullopt, std::exp(-sigma(seq, k) * info.alpha)});
  for (Index k = w.n + 1; k < w.n + w.q; ++k) out.push_back({k, std::nullopt, std::exp(-sigma(seq, k) * w.lambda)});
  if (w.q > 0) out.push_back({w.n + w.q, std::nullopt, w.last_weight});
  return out;
}

PlateauWitness plateau_witness(const SigmaSequence& seq, double u, double eps, const FitOptions& opts) {
  if (!(eps > 0.0)) throw std::invalid_argument("plateau_witness: eps must be > 0");
  const auto setup = plateau_setup(seq, opts);
  PlateauWitness out;
  out.u = u;
  out.target = -setup.alpha * u - setup.target;
  if (near(u, setup.gamma, 1e-12)) {
    out.exact = true;
    const Index count = std::min<Index>(opts.max_weights, 1000);
    out.window.n = seq.start_index() + count - 1;
    out.weights = materialize(seq, out.window);
    return out;
  }
  if (u < setup.gamma) throw std::invalid_argument("plateau_witness: u must be >= gamma");

  const Index n = window_start(seq, u);
  const Index budget = opts.max_terms - (n - seq.start_index() + 1);
  if (budget < 1) throw WitnessNotReached("plateau_witness: term budget below the prefix length", kInf);
  const auto pre = sigmas(seq, seq.start_index(), n);
  std::vector<double> win;
  PlateauWindow best;
  best.gap = kInf;
  double lambda = 0.0;
  for (Index q = 1;; q = std::min(2 * q, budget)) {
    for (Index k = n + 1 + static_cast<Index>(win.size()); k <= n + q; ++k) win.push_back(sigma(seq, k));
    const auto w = window_impl(pre, std::span<const double>(win.data(), static_cast<std::size_t>(q)), u,
                               setup.alpha, setup.target, n, lambda);
    lambda = w.lambda;
    if (w.gap < best.gap) best = w;
    if (w.gap <= eps || q == budget) break;
  }
  out.window = best;
  out.gap = best.gap;
  if (best.gap > eps) {
    throw WitnessNotReached("plateau_witness: best gap " + std::to_string(best.gap) + " > eps after " +
                                std::to_string(best.n + best.q) + " terms",
                            best.gap);
  }
  if (best.n + best.q <= opts.max_weights) out.weights = materialize(seq, best);
  return out;
}

// ---- alternating family ------------------------------------------------------

double alternating_ratio(double u) {
  if (!(u > 0.0) || !std::isfinite(u)) throw std::invalid_argument("alternating_ratio: u must be positive");
  return 2.0 * u / (1.0 + 2.0 * u + std::sqrt(4.0 * u + 1.0));
}

AlternatingAttainment alternating_attainment(double u, const VarsigmaSequence& vs, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("alternating_attainment: tol must be > 0");
  AlternatingAttainment out;
  out.q = alternating_ratio(u);
  const double lq = std::log(out.q);
  switch (vs.kind()) {
    case VarsigmaSequence::Kind::PowerK:
      out.convergent = true;
      out.rule = "n^k q^n is summable for q < 1";
      break;
    case VarsigmaSequence::Kind::ExpAlpha:
      out.convergent = vs.parameter() < -lq;
      out.rule = "e^{alpha n} q^n summable iff alpha < ln(1/q) = " + std::to_string(-lq);
      break;
    case VarsigmaSequence::Kind::ExpSquare:
      out.convergent = false;
      out.rule = "e^{n^2} q^n -> inf";
      break;
  }
  if (!out.convergent) return out;

  // Terms a_n = varsigma_n q^n; the alternating remainder after n is at most
  // a_{n+1} once a is nonincreasing from n+1 on.
  auto log_a = [&](Index n) { return vs.log_value(n) + static_cast<double>(n) * lq; };
  auto decreasing_from = [&](Index n) {
    if (vs.kind() == VarsigmaSequence::Kind::ExpAlpha) return true;
    return vs.parameter() * std::log1p(1.0 / static_cast<double>(n)) + lq <= 0.0;
  };
  detail::Neumaier acc;
  constexpr Index kMaxTerms = 10000000;
  for (Index n = 1; n <= kMaxTerms; ++n) {
    acc.add((n % 2 == 0 ? 1.0 : -1.0) * std::exp(log_a(n)));
    const double next = std::exp(log_a(n + 1));
    if (decreasing_from(n + 1) && next <= tol) {
      out.terms = n;
      out.tail_bound = next;
      break;
    }
    out.terms = n;
    out.tail_bound = kInf;
  }
  out.v_bar = acc.value();
  return out;
}

AlternatingWitness alternating_witness(double u, double v, double eps, const VarsigmaSequence& vs, Index max_terms) {
  if (!(eps > 0.0)) throw std::invalid_argument("alternating_witness: eps must be > 0");
  if (!std::isfinite(u) || !std::isfinite(v)) throw std::invalid_argument("alternating_witness: u, v must be finite");
  if (u < 0.0) throw Infeasible("alternating_witness: u < 0");
  AlternatingWitness out;
  if (u == 0.0) {
    if (v == 0.0) return out;
    throw Infeasible("alternating_witness: u = 0 != v, the infimum is +inf while g*(0, v) = 0");
  }
  const double q = alternating_ratio(u);
  const double lq = std::log(q);
  out.target = u * lq - q / (1.0 - q);

  // Smallest prefix whose omitted entropy sum_{k>N} q^k (1 - k ln q) is below eps/2.
  Index N = 1;
  double u_rest = 0.0;
  for (;; ++N) {
    const double qn1 = std::exp(static_cast<double>(N + 1) * lq);
    const double a = qn1 / (1.0 - q);
    u_rest = qn1 * (static_cast<double>(N + 1) - static_cast<double>(N) * q) / ((1.0 - q) * (1.0 - q));
    if (a - lq * u_rest < 0.5 * eps) break;
    if (N >= max_terms) throw WitnessNotReached("alternating_witness: prefix exceeds the term budget", kInf);
  }
  detail::Neumaier prefix_entropy;
  double Lmax = -kInf;
  for (Index k = 1; k <= N; ++k) {
    const double w = std::exp(static_cast<double>(k) * lq);
    out.weights.push_back({k, std::nullopt, w});
    prefix_entropy.add(w * (static_cast<double>(k) * lq - 1.0));
    Lmax = std::max(Lmax, vs.log_value(k) + static_cast<double>(k) * lq);
  }
  Lmax = std::max(Lmax, 0.0);
  // v' = v - sum_{k<=N} (-1)^k varsigma_k q^k, kept as e^{Lmax} * scaled.
  detail::Neumaier vbar;
  for (Index k = 1; k <= N; ++k) {
    const double sign = k % 2 == 0 ? 1.0 : -1.0;
    vbar.add(sign * std::exp(vs.log_value(k) + static_cast<double>(k) * lq - Lmax));
  }
  const double vp_scaled = v * std::exp(-Lmax) - vbar.value();
  const double vp_sign = vp_scaled < 0.0 ? -1.0 : 1.0;
  const double vp_log = vp_scaled == 0.0 ? -kInf : std::log(std::fabs(vp_scaled)) + Lmax;
  const double up_log = std::log(u_rest);

  for (Index m = N + 1;; ++m) {
    if (m + 1 > max_terms) {
      throw WitnessNotReached("alternating_witness: correction index exceeds the term budget", kInf);
    }
    const double md = static_cast<double>(m);
    const double ls_m = vs.log_value(m);
    const double ls_m1 = vs.log_value(m + 1);
    if (up_log + ls_m < std::log(md) + vp_log || up_log + ls_m1 < std::log(md + 1.0) + vp_log) continue;
    const double r = std::exp(ls_m - ls_m1);
    const double sign_m1 = (m + 1) % 2 == 0 ? 1.0 : -1.0;  // (-1)^{m+1}
    const double a = sign_m1 * vp_sign * std::exp(std::log(md + 1.0) + vp_log - ls_m1);
    const double b = -sign_m1 * vp_sign * std::exp(std::log(md) + vp_log - ls_m);
    const double gm = std::max(0.0, (u_rest - a) / (md + (md + 1.0) * r));
    const double gm1 = std::max(0.0, (u_rest - b) * r / (md + (md + 1.0) * r));
    const double pair = xlogx_minus_x(gm) + xlogx_minus_x(gm1);
    if (!(pair < 0.5 * eps)) continue;
    out.prefix_end = N;
    out.m = m;
    out.weights.push_back({m, std::nullopt, gm});
    out.weights.push_back({m + 1, std::nullopt, gm1});
    out.entropy = prefix_entropy.value() + pair;
    out.gap = out.entropy - out.target;
    break;
  }

  detail::Neumaier us;
  double Lres = std::log(std::max(1.0, std::fabs(v)));
  for (const auto& w : out.weights) {
    us.add(static_cast<double>(w.index) * w.value);
    if (w.value > 0.0) Lres = std::max(Lres, vs.log_value(w.index) + std::log(w.value));
  }
  detail::Neumaier vs_sum;
  for (const auto& w : out.weights) {
    if (w.value <= 0.0) continue;
    const double sign = w.index % 2 == 0 ? 1.0 : -1.0;
    vs_sum.add(sign * std::exp(vs.log_value(w.index) + std::log(w.value) - Lres));
  }
  vs_sum.add(-v * std::exp(-Lres));
  out.u_residual = std::fabs(us.value() - u) / std::max(1.0, u);
  out.v_residual = std::fabs(vs_sum.value());
  return out;
}

}  // namespace gibbs
