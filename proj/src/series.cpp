#include "gibbs/series.hpp"

#include <algorithm>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "neumaier.hpp"

namespace gibbs {

namespace {

constexpr int kMaxOrder = 16;
constexpr double kInf = std::numeric_limits<double>::infinity();

// Thrown by the summation kernels; eval() rescales it into BudgetExceeded.
struct ScaledBudget {
  detail::ScaledSum best;
  std::string message;
};

double log_term(double s, int p, double shifted_exponent) {
  return p == 0 ? shifted_exponent : p * std::log(s) + shifted_exponent;
}

std::string budget_message(const SigmaSequence& seq, double y, int p, Index max_terms) {
  return "tolerance not certified within " + std::to_string(max_terms) + " terms for " + seq.spec() +
         " at y=" + std::to_string(y) + ", p=" + std::to_string(p);
}

// ---- constant-gap certificate ----------------------------------------------
//
// With sigma_{n+1} - sigma_n >= delta for n > N and s0 = sigma_{N+1} >= p/(-y),
// the terms s^p e^{sy} are dominated by a geometric series of ratio
// r = (1 + delta/s0)^p e^{delta y}.
detail::ScaledSum sum_with_gap(const SigmaSequence& seq, double y, int p, double tol, Index max_terms) {
  const double s_min = sigma_min(seq);
  detail::Neumaier acc;
  double last_bound = kInf;
  Index n = seq.start_index();
  double s = s_min;
  for (Index count = 1;; ++count, ++n) {
    acc.add(std::exp(log_term(s, p, (s - s_min) * y)));
    const double s_next = sigma(seq, n + 1);
    const double delta = increment_gap(seq, n + 1);
    if (delta > 0.0 && s_next * (-y) >= p) {
      const double log_r = p * std::log1p(delta / s_next) + delta * y;
      if (log_r < 0.0) {
        last_bound = std::exp(log_term(s_next, p, (s_next - s_min) * y)) / -std::expm1(log_r);
        if (last_bound <= tol) return {acc.value(), last_bound, count};
      }
    }
    if (count >= max_terms) throw ScaledBudget{{acc.value(), last_bound, count}, budget_message(seq, y, p, max_terms)};
    s = s_next;
  }
}

// ---- stretched-exponential integral certificate (Power, theta < 1) ---------
//
// For x^theta >= p/(-y) the term x^{theta p} e^{y x^theta} is nonincreasing, so
// the tail after N is at most (1/theta)(-y)^{-a} Gamma(a, -y N^theta) with
// a = p + 1/theta, and Gamma(a, z) <= z^{a-1} e^{-z} / (1 - (a-1)/z).
std::optional<double> power_tail_log_bound(double theta, double y, int p, Index N) {
  const double a = p + 1.0 / theta;
  const double nt = std::pow(static_cast<double>(N), theta);
  const double z = -y * nt;
  if (z < p) return std::nullopt;
  double log_gamma = (a - 1.0) * std::log(z) - z;
  if (a > 1.0) {
    if (z <= 2.0 * (a - 1.0)) return std::nullopt;
    log_gamma -= std::log1p(-(a - 1.0) / z);
  }
  return -std::log(theta) - a * std::log(-y) + log_gamma;
}

detail::ScaledSum sum_power_integral(const SigmaSequence& seq, double y, int p, double tol, Index max_terms) {
  const double theta = seq.parameter();
  const double s_min = sigma_min(seq);
  detail::Neumaier acc;
  double last_bound = kInf;
  for (Index n = seq.start_index(), count = 1;; ++n, ++count) {
    const double s = sigma(seq, n);
    const double term = std::exp(log_term(s, p, (s - s_min) * y));
    acc.add(term);
    if (term <= tol) {
      if (auto lb = power_tail_log_bound(theta, y, p, n)) {
        last_bound = std::exp(*lb - s_min * y);
        if (last_bound <= tol) return {acc.value(), last_bound, count};
      }
    }
    if (count >= max_terms) throw ScaledBudget{{acc.value(), last_bound, count}, budget_message(seq, y, p, max_terms)};
  }
}

// ---- LogFam: midpoint bracket ------------------------------------------------
//
// t(x) = sigma(x)^p e^{sigma(x) y}, sigma(x) = ln x + theta ln ln x. Midpoint
// rule: int_{n-1/2}^{n+1/2} t = t(n) + t''(xi_n)/24. When t'' >= 0 and t''' <= 0
// on [N, inf), with I = int_{N+1/2}^inf t,
//   I - (t''(N+1/2) - t'(N+1/2))/24  <=  sum_{n>N} t(n)  <=  I + t'(N+3/2)/24.
class LogFamTail {
 public:
  LogFamTail(double theta, double y, int p, double s_min) : theta_(theta), y_(y), p_(p), s_min_(s_min) {}

  double sigma_at(double x) const { return std::log(x) + theta_ * std::log(std::log(x)); }

  double term(double x) const {
    const double s = sigma_at(x);
    return std::exp(log_term(s, p_, (s - s_min_) * y_));
  }

  // t'(x) and t''(x) through psi(L) = ln t(e^L).
  std::pair<double, double> derivatives(double x) const {
    const double L = std::log(x);
    const double s = L + theta_ * std::log(L);
    const double s1 = 1.0 + theta_ / L;
    const double s2 = -theta_ / (L * L);
    const double d1 = p_ * s1 / s + y_ * s1;
    const double d2 = p_ * (s2 / s - s1 * s1 / (s * s)) + y_ * s2;
    const double t = term(x);
    return {t * d1 / x, t * (d2 + d1 * d1 - d1) / (x * x)};
  }

  // Sufficient conditions for t' < 0, t'' >= 0 and t''' <= 0 on [N, inf).
  bool certified(Index N) const {
    const double L = std::log(static_cast<double>(N));
    if (!(L > 0.0) || !(L > -theta_)) return false;
    const double sN = L + theta_ * std::log(L);
    if (!(sN > 0.0)) return false;
    const double at = std::fabs(theta_);
    const double ay = std::fabs(y_);
    const double c = 1.0 + at / L;
    const double e = p_ * c / sN + at * ay / L;
    const double a_max = y_ + e;
    if (!(a_max < 0.0)) return false;
    const double b_max = p_ * at / (L * L * sN) + p_ * c * c / (sN * sN) + at * ay / (L * L);
    if (a_max * a_max - a_max - b_max < 0.0) return false;
    const double A = -a_max;
    const double A_hi = ay + e;
    const double c3 = p_ * (2.0 * at / (L * L * L * sN) + 3.0 * c * at / (L * L * sN * sN) +
                            2.0 * c * c * c / (sN * sN * sN)) +
                      2.0 * at * ay / (L * L * L);
    return A * (1.0 + A) * (2.0 + A) >= c3 + 3.0 * (1.0 + A_hi) * b_max;
  }

  // int_a^inf t(x) dx (scaled) and an error estimate.
  std::pair<double, double> integral_from(double a) const {
    const double L = std::log(a);
    if (y_ == -1.0 && p_ == 0) {
      return {std::exp(s_min_ + (1.0 - theta_) * std::log(L)) / (theta_ - 1.0), 0.0};
    }
    if (y_ == -1.0 && p_ == 1) {
      const double tm1 = theta_ - 1.0;
      const double l1 = std::pow(L, 1.0 - theta_);
      const double v = std::pow(L, 2.0 - theta_) / (theta_ - 2.0) +
                       theta_ * (l1 * std::log(L) / tm1 + l1 / (tm1 * tm1));
      return {std::exp(s_min_) * v, 0.0};
    }
    const double theta = theta_, y = y_, s_min = s_min_;
    const int p = p_;
    auto integrand = [=](double s) {
      const double sig = s + theta * std::log(s);
      const double lp = p == 0 ? 0.0 : p * std::log(sig);
      return std::exp(lp + (1.0 + y) * s + theta * y * std::log(s) - s_min * y);
    };
    boost::math::quadrature::exp_sinh<double> integrator(12);
    double err = 0.0;
    double l1 = 0.0;
    const double value = integrator.integrate(integrand, L, kInf, 1e-14, &err, &l1);
    return {value, err + 4.0 * std::numeric_limits<double>::epsilon() * l1};
  }

  // Bracket width at N (no integral needed).
  double width(Index N) const {
    const auto x = static_cast<double>(N);
    const auto da = derivatives(x + 0.5);
    const auto db = derivatives(x + 1.5);
    return std::max(0.0, (da.second + (db.first - da.first)) / 24.0) +
           8.0 * std::numeric_limits<double>::epsilon() * term(x);
  }

  struct Bracket {
    double lower;
    double width;
  };

  Bracket bracket(Index N) const {
    const auto x = static_cast<double>(N);
    const auto [i_n, err] = integral_from(x + 0.5);
    const auto da = derivatives(x + 0.5);
    return {std::max(0.0, i_n - (da.second - da.first) / 24.0 - err), width(N) + 2.0 * err};
  }

 private:
  double theta_, y_;
  int p_;
  double s_min_;
};

detail::ScaledSum sum_logfam(const SigmaSequence& seq, double y, int p, double tol, Index max_terms) {
  const double s_min = sigma_min(seq);
  const LogFamTail tail(seq.parameter(), y, p, s_min);
  detail::Neumaier acc;
  double last_bound = kInf;
  double best_lower = 0.0;
  Index next_check = seq.start_index();
  for (Index n = seq.start_index(), count = 1;; ++n, ++count) {
    acc.add(tail.term(static_cast<double>(n)));
    if (n >= next_check) {
      next_check = n + std::max<Index>(1, n / 64);
      if (tail.certified(n) && tail.width(n) <= 0.5 * tol) {
        const auto br = tail.bracket(n);
        last_bound = br.width;
        best_lower = br.lower;
        if (br.width <= tol) return {acc.value() + br.lower, br.width, count};
      }
    }
    if (count >= max_terms) {
      throw ScaledBudget{{acc.value() + best_lower, last_bound, count}, budget_message(seq, y, p, max_terms)};
    }
  }
}

// ---- BoxTriple: lattice-count certificate ------------------------------------
//
// The number of triples with k^2+l^2+m^2 = s is at most s, so the tail beyond
// level S is dominated by kappa^p sum_{s>S} s^{p+1} e^{kappa y s}, a series
// with term ratio at most r = ((S+2)/(S+1))^{p+1} e^{kappa y}.
std::optional<double> box_tail_log_bound(double kappa, double y, int p, std::int64_t S) {
  const double s1 = static_cast<double>(S + 1);
  const double log_r = (p + 1) * std::log1p(1.0 / s1) + kappa * y;
  if (log_r >= 0.0) return std::nullopt;
  return p * std::log(kappa) + (p + 1) * std::log(s1) + kappa * y * (s1 - 3.0) - std::log(-std::expm1(log_r));
}

std::int64_t count_triples(std::int64_t max_level) {
  std::int64_t count = 0;
  for (std::int64_t k = 1; k * k + 2 <= max_level; ++k) {
    for (std::int64_t l = 1; k * k + l * l + 1 <= max_level; ++l) {
      const std::int64_t rest = max_level - k * k - l * l;
      auto m = static_cast<std::int64_t>(std::sqrt(static_cast<double>(rest)));
      while (m * m > rest) --m;
      while ((m + 1) * (m + 1) <= rest) ++m;
      count += m;
    }
  }
  return count;
}

detail::ScaledSum sum_box_levels(double kappa, double y, int p, std::int64_t S, double width) {
  detail::Neumaier acc;
  Index terms = 0;
  for (const auto& lv : box_levels(S)) {
    const double s = kappa * static_cast<double>(lv.level);
    acc.add(static_cast<double>(lv.multiplicity) *
            std::exp(log_term(s, p, kappa * static_cast<double>(lv.level - 3) * y)));
    terms += lv.multiplicity;
  }
  return {acc.value(), width, terms};
}

detail::ScaledSum sum_box(const SigmaSequence& seq, double y, int p, double tol, Index max_terms) {
  const double kappa = seq.parameter();
  std::int64_t S = 3;
  double bound = kInf;
  while (true) {
    if (auto lb = box_tail_log_bound(kappa, y, p, S)) {
      bound = std::exp(*lb);
      if (bound <= tol) break;
    }
    S += std::max<std::int64_t>(1, S / 16);
  }
  if (count_triples(S) > max_terms) {
    std::int64_t lo = 3, hi = S;
    while (hi - lo > 1) {
      const auto mid = lo + (hi - lo) / 2;
      (count_triples(mid) <= max_terms ? lo : hi) = mid;
    }
    const auto lb = box_tail_log_bound(kappa, y, p, lo);
    auto best = sum_box_levels(kappa, y, p, lo, lb ? std::exp(*lb) : kInf);
    throw ScaledBudget{best, budget_message(seq, y, p, max_terms)};
  }
  return sum_box_levels(kappa, y, p, S, bound);
}

// LogFam boundary data is expensive relative to a single evaluation; memoize
// per (theta, max_terms).
std::mutex g_domain_mutex;
std::map<std::pair<double, Index>, DomainInfo> g_domain_cache;

}  // namespace

Index default_max_terms() {
  if (const char* env = std::getenv("GIBBS_SERIES_MAX_TERMS")) {
    char* end = nullptr;
    const long long v = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1000) return static_cast<Index>(v);
  }
  return 10'000'000;
}

std::string_view to_string(BoundaryClass c) noexcept {
  switch (c) {
    case BoundaryClass::EmptyDomain:
      return "EmptyDomain";
    case BoundaryClass::OpenBoundary:
      return "OpenBoundary";
    case BoundaryClass::ClosedInfiniteSlope:
      return "ClosedInfiniteSlope";
    case BoundaryClass::ClosedFiniteSlope:
      return "ClosedFiniteSlope";
  }
  return "?";
}

namespace detail {

DomainInfo classify(const SigmaSequence& seq) {
  DomainInfo info;
  switch (seq.family()) {
    case Family::Linear:
    case Family::Power:
    case Family::Quadratic:
    case Family::BoxTriple:
      break;
    case Family::Custom:
      info.alpha = seq.custom_spec()->declared_alpha;
      break;
    case Family::LogLog:
      info.alpha = kInf;
      info.boundary_class = BoundaryClass::EmptyDomain;
      break;
    case Family::LogFam: {
      info.alpha = 1.0;
      const double theta = seq.parameter();
      if (theta > 2.0) {
        info.boundary_class = BoundaryClass::ClosedFiniteSlope;
      } else if (theta > 1.0) {
        info.boundary_class = BoundaryClass::ClosedInfiniteSlope;
      }
      break;
    }
  }
  return info;
}

void check_admissible(const SigmaSequence& seq, const DomainInfo& info, double y, int p) {
  if (info.boundary_class == BoundaryClass::EmptyDomain) {
    throw DomainError("EmptyDomain: dom f is empty for " + seq.spec(), info);
  }
  if (!std::isfinite(y)) throw DomainError("y must be finite", info);
  if (p < 0 || p > kMaxOrder) {
    throw std::invalid_argument("derivative order must be in [0, " + std::to_string(kMaxOrder) + "]");
  }
  const double boundary = -info.alpha;
  if (y < boundary) return;
  if (y == boundary) {
    if (info.boundary_class == BoundaryClass::OpenBoundary) {
      throw DomainError("y = -alpha is not in dom f (open boundary)", info);
    }
    if (p == 0) return;
    if (p == 1 && info.boundary_class == BoundaryClass::ClosedFiniteSlope) return;
    if (p == 1) throw DomainError("f' is infinite at the boundary (ClosedInfiniteSlope)", info);
    throw DomainError("derivatives of order >= 2 are not evaluated at the boundary", info);
  }
  throw DomainError("y = " + std::to_string(y) + " lies outside dom f (y must be <= " +
                        std::to_string(boundary) + ")",
                    info);
}

ScaledSum scaled_sum(const SigmaSequence& seq, double y, int p, double tol_scaled, Index max_terms) {
  switch (seq.family()) {
    case Family::Linear:
    case Family::Quadratic:
    case Family::Custom:
      return sum_with_gap(seq, y, p, tol_scaled, max_terms);
    case Family::Power:
      if (seq.parameter() >= 1.0) return sum_with_gap(seq, y, p, tol_scaled, max_terms);
      return sum_power_integral(seq, y, p, tol_scaled, max_terms);
    case Family::LogFam:
      return sum_logfam(seq, y, p, tol_scaled, max_terms);
    case Family::BoxTriple:
      return sum_box(seq, y, p, tol_scaled, max_terms);
    case Family::LogLog:
      break;
  }
  throw DomainError("EmptyDomain: dom f is empty for " + seq.spec(), classify(seq));
}

}  // namespace detail

SeriesEval eval(const SigmaSequence& seq, double y, int p, double tol, const EvalOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("eval: tol must be > 0");
  detail::check_admissible(seq, detail::classify(seq), y, p);
  const double s_min = sigma_min(seq);
  const double scale = std::exp(s_min * y);
  const double tol_scaled = scale > 0.0 ? std::min(tol / scale, 1e300) : 1e300;
  try {
    const auto ss = detail::scaled_sum(seq, y, p, tol_scaled, opts.max_terms);
    return {ss.value * scale, p, ss.terms, ss.width * scale, tol};
  } catch (const ScaledBudget& b) {
    throw BudgetExceeded(b.message, {b.best.value * scale, p, b.best.terms, b.best.width * scale, tol});
  }
}

double log_eval(const SigmaSequence& seq, double y, int p, double rel_tol, const EvalOptions& opts) {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("log_eval: rel_tol must be > 0");
  detail::check_admissible(seq, detail::classify(seq), y, p);
  const double s_min = sigma_min(seq);
  // The scaled sum is at least s_min^p (its first term); a coarse pass sizes it.
  const double floor_value = std::pow(s_min, p);
  const double rel = std::max(rel_tol, 64.0 * std::numeric_limits<double>::epsilon());
  try {
    const auto coarse = detail::scaled_sum(seq, y, p, 1e-3 * floor_value, opts.max_terms);
    const auto ss = detail::scaled_sum(seq, y, p, 0.5 * rel * coarse.value, opts.max_terms);
    return s_min * y + std::log(ss.value + 0.5 * ss.width);
  } catch (const ScaledBudget& b) {
    const double scale = std::exp(s_min * y);
    throw BudgetExceeded(b.message, {b.best.value * scale, p, b.best.terms, b.best.width * scale, rel_tol});
  }
}

double phi(const SigmaSequence& seq, double y, double tol, const EvalOptions& opts) {
  if (!(tol > 0.0)) throw std::invalid_argument("phi: tol must be > 0");
  const auto info = detail::classify(seq);
  detail::check_admissible(seq, info, y, 0);
  if (!(y < -info.alpha)) throw DomainError("phi requires an interior point", info);
  const double s_min = sigma_min(seq);
  try {
    const auto s0 = detail::scaled_sum(seq, y, 0, 0.25 * tol, opts.max_terms);
    const auto s1 = detail::scaled_sum(seq, y, 1, 0.25 * tol * s_min, opts.max_terms);
    return (s1.value + 0.5 * s1.width) / (s0.value + 0.5 * s0.width);
  } catch (const ScaledBudget& b) {
    throw BudgetExceeded(b.message, {b.best.value, 0, b.best.terms, b.best.width, tol});
  }
}

Index ground_multiplicity(const SigmaSequence&) { return 1; }

DomainInfo domain_info(const SigmaSequence& seq, const EvalOptions& opts) {
  auto info = detail::classify(seq);
  if (seq.family() != Family::LogFam || info.boundary_class == BoundaryClass::OpenBoundary) return info;

  const auto key = std::make_pair(seq.parameter(), opts.max_terms);
  {
    std::lock_guard lock(g_domain_mutex);
    if (auto it = g_domain_cache.find(key); it != g_domain_cache.end()) return it->second;
  }
  const double y = -info.alpha;
  const auto f0 = eval(seq, y, 0, 1e-13, opts);
  info.f_at_boundary = ExtReal::finite(f0.value);
  info.f_at_boundary_tail_bound = f0.tail_bound;
  if (info.boundary_class == BoundaryClass::ClosedFiniteSlope) {
    const auto f1 = eval(seq, y, 1, 1e-13, opts);
    info.gamma = ExtReal::finite(f1.value);
    info.gamma_tail_bound = f1.tail_bound;
  }
  std::lock_guard lock(g_domain_mutex);
  g_domain_cache.emplace(key, info);
  return info;
}

}  // namespace gibbs
