#include "gibbs/scenarios.hpp"

#include <cmath>
#include <numbers>

#include "neumaier.hpp"

namespace gibbs {

namespace {

constexpr Index kCertM = 1000000;

double partial_sum(const SigmaSequence& seq, double y, int p, Index M) {
  detail::Neumaier acc;
  for (Index n = seq.start_index(); n <= M; ++n) {
    const double s = sigma(seq, n);
    acc.add((p ? s : 1.0) * std::exp(s * y));
  }
  return acc.value();
}

Certificate convergent(const SigmaSequence& seq, double y, int p, const EvalOptions& opts) {
  constexpr double kTol = 1e-10;
  Certificate c;
  c.quantity = p ? "f'" : "f";
  c.y = y;
  c.converges = true;
  const auto e = eval(seq, y, p, kTol, opts);
  c.value = e.value;
  c.width = e.tail_bound;
  c.M = e.truncation_index;
  c.bound_form = "partial sum plus certified tail bracket";
  c.consistent = e.tail_bound <= kTol;
  return c;
}

Certificate divergent(const SigmaSequence& seq, double y, int p, double bound, std::string form) {
  Certificate c;
  c.quantity = p ? "f'" : "f";
  c.y = y;
  c.M = kCertM;
  c.value = partial_sum(seq, y, p, kCertM);
  c.bound = bound;
  c.bound_form = std::move(form);
  c.consistent = c.value >= bound;
  return c;
}

// sum_{n=3}^M 1/(n (ln n)^a) >= int_3^{M+1} dx/(x (ln x)^a), a <= 1.
double log_integral_lower(double a, Index M) {
  const double top = std::log(static_cast<double>(M + 1));
  const double bot = std::log(3.0);
  if (a == 1.0) return std::log(top) - std::log(bot);
  return (std::pow(top, 1.0 - a) - std::pow(bot, 1.0 - a)) / (1.0 - a);
}

Example1Row make_row(std::string family, std::string range, std::string seq, std::string domain,
                     std::string slope) {
  Example1Row r;
  r.family = std::move(family);
  r.theta_range = std::move(range);
  r.sequence = std::move(seq);
  r.domain = std::move(domain);
  r.boundary_slope = std::move(slope);
  return r;
}

}  // namespace

double BoxModel::h(double x, double y) const {
  return std::exp(x + 3.0 * log_eval(SigmaSequence::quadratic(), kappa * y, 0, 1e-15));
}

std::pair<double, double> BoxModel::grad_h(double x, double y) const {
  const auto q = SigmaSequence::quadratic();
  const double lg = log_eval(q, kappa * y, 0, 1e-15);
  const double lg1 = log_eval(q, kappa * y, 1, 1e-15);
  return {std::exp(x + 3.0 * lg), 3.0 * kappa * std::exp(x + 2.0 * lg + lg1)};
}

std::vector<Example1Row> example1_table(const EvalOptions& opts) {
  std::vector<Example1Row> rows;
  const double M = static_cast<double>(kCertM);

  {
    auto r = make_row("n^theta", "theta > 0", "power:1", "(-inf, 0)", "none (open)");
    const auto seq = SigmaSequence::parse(r.sequence);
    r.expected = BoundaryClass::OpenBoundary;
    r.certificates.push_back(convergent(seq, -1.0, 0, opts));
    r.certificates.push_back(divergent(seq, 0.0, 0, M, "sum_{n<=M} 1 = M"));
    rows.push_back(std::move(r));
  }
  {
    auto r = make_row("ln[n (ln n)^theta]", "theta <= 1", "logfam:0.5", "(-inf, -1)", "none (open)");
    const auto seq = SigmaSequence::parse(r.sequence);
    r.expected = BoundaryClass::OpenBoundary;
    r.certificates.push_back(convergent(seq, -1.05, 0, opts));
    r.certificates.push_back(divergent(seq, -1.0, 0, log_integral_lower(0.5, kCertM),
                                       "((ln(M+1))^{1/2} - (ln 3)^{1/2}) / (1/2)"));
    rows.push_back(std::move(r));
  }
  {
    auto r = make_row("ln[n (ln n)^theta]", "theta in (1, 2]", "logfam:1.5", "(-inf, -1]", "f'_-(-1) = inf");
    const auto seq = SigmaSequence::parse(r.sequence);
    r.expected = BoundaryClass::ClosedInfiniteSlope;
    r.certificates.push_back(convergent(seq, -1.0, 0, opts));
    // sigma_n >= ln n for n >= 3, so f'(-1) >= sum 1/(n (ln n)^{1/2}).
    r.certificates.push_back(divergent(seq, -1.0, 1, log_integral_lower(0.5, kCertM),
                                       "((ln(M+1))^{1/2} - (ln 3)^{1/2}) / (1/2), using sigma_n >= ln n"));
    rows.push_back(std::move(r));
  }
  {
    auto r = make_row("ln[n (ln n)^theta]", "theta > 2", "logfam:3", "(-inf, -1]", "f'_-(-1) = gamma < inf");
    const auto seq = SigmaSequence::parse(r.sequence);
    r.expected = BoundaryClass::ClosedFiniteSlope;
    r.certificates.push_back(convergent(seq, -1.0, 0, opts));
    r.certificates.push_back(convergent(seq, -1.0, 1, opts));
    rows.push_back(std::move(r));
  }
  {
    auto r = make_row("ln ln n", "-", "loglog", "empty", "none");
    const auto seq = SigmaSequence::parse(r.sequence);
    r.expected = BoundaryClass::EmptyDomain;
    for (double y : {-1.0, -5.0}) {
      r.certificates.push_back(divergent(seq, y, 0, (M - 2.0) * std::pow(std::log(M), y),
                                         "(M - 2) (ln M)^y, terms decreasing"));
    }
    rows.push_back(std::move(r));
  }

  for (auto& r : rows) {
    const auto info = domain_info(SigmaSequence::parse(r.sequence), opts);
    r.computed = info.boundary_class;
    if (info.gamma.is_finite()) r.gamma = info.gamma.value();
    if (info.f_at_boundary.is_finite()) r.f_at_boundary = info.f_at_boundary.value();
    r.matches = r.computed == r.expected;
    for (const auto& c : r.certificates) r.matches = r.matches && c.consistent;
  }
  return rows;
}

std::vector<Example2Row> example2_table() {
  struct Item {
    double x;
    const char* vs;
    Index N;
  };
  const double ln2 = std::numbers::ln2;
  const Item items[] = {{-ln2, "power:2", 50},    {-ln2, "power:2", 200}, {-1.0, "power:2", 200},
                        {-3.0, "exp:2", 500},     {-2.5, "exp:2", 500},   {-1.0, "exp:2", 500},
                        {-0.5, "exp:0.25", 500},  {-1.0, "expsq", 20}};
  std::vector<Example2Row> rows;
  for (const auto& it : items) {
    Example2Row r;
    r.x = it.x;
    r.varsigma = it.vs;
    r.N = it.N;
    r.result = alternating_gradient_series(it.x, VarsigmaSequence::parse(it.vs), it.N);
    if (r.result.reference) {
      r.gap = std::max(std::fabs(r.result.first - r.result.reference->first),
                       std::fabs(r.result.second - r.result.reference->second));
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

BoxReport box_report(double u, double v, double kappa, double tol, const FitOptions& opts) {
  BoxReport r;
  r.u = u;
  r.v = v;
  r.kappa = kappa;
  const auto seq = SigmaSequence::box(kappa);
  r.h_star = box_conjugate(u, v, tol, kappa, opts);
  r.fit = fit_gibbs(seq, u, v, tol, opts);
  if (u < 0.0 || v < 0.0) {
    r.region = "outside";
    return r;
  }
  if (u == 0.0) {
    r.region = "origin-ray";
    r.empty_solution_set = v > 0.0;
    return r;
  }
  if (!r.h_star.value.is_finite()) {
    r.region = "outside";
    return r;
  }
  if (r.fit.status == FitStatus::BoundarySingleton) {
    r.region = "degenerate-ray";
    return r;
  }
  r.region = "interior";
  if (r.fit.dual_x && r.fit.dual_y) {
    r.dual = std::make_pair(*r.fit.dual_x, *r.fit.dual_y);
    const auto g = BoxModel{kappa}.grad_h(*r.fit.dual_x, *r.fit.dual_y);
    r.grad_at_dual = g;
    r.roundtrip_error = std::max(std::fabs(g.first - u) / std::max(1.0, u), std::fabs(g.second - v) / std::max(1.0, v));
  }
  return r;
}

std::vector<BoxReport> box_table(double kappa) {
  const std::pair<double, double> grid[] = {{1, 3}, {1, 4}, {0, 2}, {0, 0}, {1, 2},
                                            {2, 10}, {0.5, 6}, {1, 20}, {-1, 3}};
  std::vector<BoxReport> out;
  for (auto [u, v] : grid) out.push_back(box_report(u, kappa * v, kappa));
  return out;
}

}  // namespace gibbs
