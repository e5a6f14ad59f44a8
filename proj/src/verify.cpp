#include "gibbs/verify.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "gibbs/entropy.hpp"
#include "gibbs/scenarios.hpp"

namespace gibbs {

namespace {

using Params = std::vector<std::pair<std::string, std::string>>;
using Clock = std::chrono::steady_clock;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

VerificationReport make(std::string claim, Params params, std::vector<double> lhs, std::vector<double> rhs,
                        double tol) {
  VerificationReport r;
  r.claim = std::move(claim);
  r.parameters = std::move(params);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.tolerance = tol;
  finalize(r);
  return r;
}

// Relative error against |rhs| rather than max(1, |rhs|).
VerificationReport make_relative(std::string claim, Params params, double lhs, double rhs, double tol) {
  auto r = make(std::move(claim), std::move(params), {lhs}, {rhs}, tol);
  r.rel_gap = r.abs_gap / std::fabs(rhs);
  r.passed = r.rel_gap <= tol;
  return r;
}

VerificationReport failure(const std::string& claim, const std::string& what) {
  VerificationReport r;
  r.claim = claim;
  r.parameters = {{"error", what}};
  r.abs_gap = r.rel_gap = std::numeric_limits<double>::infinity();
  r.passed = false;
  return r;
}

void parallel_for(std::size_t count, unsigned jobs, const std::function<void(std::size_t)>& body) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(count)));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

std::vector<VerificationReport> ac1(const VerifyConfig& cfg) {
  std::vector<VerificationReport> out;
  const auto seq = SigmaSequence::linear();
  const EvalOptions opts{cfg.max_terms};
  const auto t0 = Clock::now();
  for (int i = 0; i < 50; ++i) {
    const double y = -10.0 + (9.95 * i) / 49.0;
    const double exact = linear_f(y);
    const auto e = eval(seq, y, 0, 1e-14 * exact, opts);
    auto r = make_relative("ac1.closed-form", {{"y", num(y)}}, e.value, exact, 1e-12);
    r.metadata = {{"truncation_index", static_cast<double>(e.truncation_index)}, {"tail_bound", e.tail_bound}};
    out.push_back(std::move(r));
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  // Only the verdict is recorded so that output stays byte-identical across runs.
  auto r = make("ac1.runtime", {{"points", "50"}, {"budget_seconds", "1"}}, {secs < 1.0 ? 1.0 : 0.0}, {1.0}, 0.0);
  out.push_back(std::move(r));
  return out;
}

std::vector<VerificationReport> ac2(const VerifyConfig& cfg) {
  const auto seq = SigmaSequence::linear();
  const double ln2 = std::numbers::ln2;
  const double exact = -1.0 - 2.0 * ln2;
  const auto c = conjugate(seq, 2.0, 1e-12, EvalOptions{cfg.max_terms});
  std::vector<VerificationReport> out;
  out.push_back(make("ac2.conjugate", {{"seq", "linear"}, {"u", "2"}}, {c.value.as_double()}, {exact}, 1e-9));
  out.push_back(make("ac2.attaining-y", {{"seq", "linear"}, {"u", "2"}},
                     {c.attaining_y.value_or(std::numeric_limits<double>::quiet_NaN())}, {-ln2}, 1e-9));
  const auto p = primal_truncated(seq, 1000, MomentTargets{2.0, std::nullopt}, 1e-12);
  auto r = make("ac2.primal", {{"seq", "linear"}, {"u", "2"}, {"N", "1000"}}, {p.value}, {exact}, 1e-6);
  r.metadata = {{"iterations", static_cast<double>(p.iterations)}, {"residual", p.residual}};
  out.push_back(std::move(r));
  return out;
}

std::vector<VerificationReport> ac3(const VerifyConfig& cfg) {
  const auto seq = SigmaSequence::linear();
  FitOptions opts;
  opts.max_terms = cfg.max_terms;
  const auto fit = fit_gibbs(seq, 1.0, 2.0, 1e-13, opts);
  std::vector<double> lhs, rhs;
  for (Index n = 1; n <= 30; ++n) {
    const auto k = static_cast<std::size_t>(n - 1);
    lhs.push_back(k < fit.weights.size() ? fit.weights[k].value : 0.0);
    rhs.push_back(std::pow(0.5, static_cast<double>(n)));
  }
  std::vector<VerificationReport> out;
  out.push_back(make("ac3.weights", {{"seq", "linear"}, {"u", "1"}, {"v", "2"}, {"n_max", "30"}}, lhs, rhs, 1e-10));
  // Same law solves the single-constraint problem sum n g_n = 2, ratio q(2) = 1/2.
  const double ratio = fit.weights.size() >= 2 ? fit.weights[1].value / fit.weights[0].value : 0.0;
  out.push_back(make("ac3.ratio", {{"u", "2"}}, {ratio}, {alternating_ratio(2.0)}, 1e-10));
  return out;
}

std::vector<VerificationReport> ac4(const VerifyConfig& cfg) {
  const auto seq = SigmaSequence::logfam(3.0);
  FitOptions opts;
  opts.max_terms = cfg.max_terms;
  opts.max_weights = 0;
  const double gamma = domain_info(seq, opts).gamma.value();
  const double us[] = {gamma + 0.5, gamma + 1.0, gamma + 2.0};
  double fs[3];
  for (int i = 0; i < 3; ++i) fs[i] = conjugate(seq, us[i], 1e-12, opts).value.as_double();

  std::vector<VerificationReport> out;
  const int pairs[][2] = {{0, 1}, {1, 2}, {0, 2}};
  for (auto [a, b] : pairs) {
    auto r = make("ac4.slope", {{"seq", "logfam:3"}, {"u1", num(us[a])}, {"u2", num(us[b])}}, {fs[b] - fs[a]},
                  {-(us[b] - us[a])}, 1e-8);
    r.metadata = {{"gamma", gamma}};
    out.push_back(std::move(r));
  }
  constexpr double eps = 1e-2;
  for (double u : us) {
    Params params{{"seq", "logfam:3"}, {"u", num(u)}, {"eps", num(eps)}, {"max_terms", std::to_string(cfg.max_terms)}};
    try {
      const auto w = plateau_witness(seq, u, eps, opts);
      auto r = make("ac4.witness", params, {w.gap}, {0.0}, eps);
      r.metadata = {{"n", static_cast<double>(w.window.n)}, {"q", static_cast<double>(w.window.q)}};
      out.push_back(std::move(r));
    } catch (const WitnessNotReached& e) {
      auto r = make("ac4.witness", params, {e.best_gap()}, {0.0}, eps);
      r.parameters.emplace_back("note", e.what());
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<VerificationReport> ac5(const VerifyConfig& cfg) {
  FitOptions opts;
  opts.max_terms = cfg.max_terms;
  std::vector<VerificationReport> out;
  {
    const auto b = box_report(1.0, 3.0, 1.0, 1e-12, opts);
    auto r = make("ac5.singleton", {{"u", "1"}, {"v", "3"}}, {b.fit.entropy.as_double(), b.h_star.value.as_double()},
                  {-1.0, -1.0}, 1e-12);
    r.parameters.emplace_back("status", std::string(to_string(b.fit.status)));
    r.passed = r.passed && b.fit.status == FitStatus::BoundarySingleton && b.fit.weights.size() == 1;
    out.push_back(std::move(r));
  }
  {
    const auto b = box_report(1.0, 4.0, 1.0, 1e-12, opts);
    auto r = make("ac5.moments", {{"u", "1"}, {"v", "4"}}, {b.fit.mass.value, b.fit.energy.value}, {1.0, 4.0}, 1e-8);
    r.metadata = {{"roundtrip_error", b.roundtrip_error}};
    out.push_back(std::move(r));
    const auto h = box_conjugate(1.0, 4.0, 1e-12, 1.0, opts);
    out.push_back(make("ac5.entropy", {{"u", "1"}, {"v", "4"}}, {b.fit.entropy.as_double()}, {h.value.as_double()},
                       1e-7));
  }
  return out;
}

std::vector<VerificationReport> ac6(const VerifyConfig& cfg) {
  const int count = cfg.grid > 0 ? cfg.grid : 20;
  std::mt19937_64 rng(cfg.seed ^ 0x6u);
  std::uniform_real_distribution<double> ydist(-3.0, -0.1), xdist(-2.0, 2.0);
  constexpr double h = 1e-5, tol = 1e-6;
  std::vector<VerificationReport> out;
  for (const char* spec : {"linear", "quadratic"}) {
    const auto seq = SigmaSequence::parse(spec);
    for (int i = 0; i < count; ++i) {
      auto r = check_gradient_sum(seq, ydist(rng), h, tol);
      r.claim = "ac6.gradient";
      out.push_back(std::move(r));
    }
  }
  for (int i = 0; i < count; ++i) {
    const double x = xdist(rng);
    auto r = check_gradient_sum_box(x, ydist(rng), h, tol);
    r.claim = "ac6.gradient-box";
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<VerificationReport> ac7(const VerifyConfig& cfg) {
  std::vector<VerificationReport> out;
  {
    const double x = -std::numbers::ln2;
    const auto g = alternating_gradient_series(x, VarsigmaSequence::power_k(2.0), 200);
    out.push_back(make("ac7.identity", {{"x", num(x)}, {"varsigma", "power:2"}, {"N", "200"}}, {g.first, g.second},
                       {2.0, -2.0 / 27.0}, 1e-10));
  }
  const int count = cfg.grid > 0 ? cfg.grid : 10;
  std::mt19937_64 rng(cfg.seed ^ 0x7u);
  std::uniform_real_distribution<double> xdist(-4.0, -0.1), adist(0.1, 3.0);
  for (int i = 0; i < count; ++i) {
    double x, a;
    do {
      x = xdist(rng);
      a = adist(rng);
    } while (std::fabs(x + a) < 0.05);
    const auto vs = VarsigmaSequence::exp_alpha(a);
    const bool expected = x + a < 0.0;
    Params params{{"x", num(x)}, {"varsigma", vs.spec()}};
    if (expected) {
      const Index N = static_cast<Index>(std::ceil(36.0 / -(x + a))) + 1;
      const auto g = alternating_gradient_series(x, vs, N);
      params.emplace_back("N", std::to_string(N));
      auto r = make("ac7.classification", params, {g.convergent ? 1.0 : 0.0, g.second},
                    {1.0, g.reference ? g.reference->second : std::numeric_limits<double>::quiet_NaN()}, 1e-10);
      out.push_back(std::move(r));
    } else {
      // Term magnitudes grow: log|term_N| increases with N.
      const auto g1 = alternating_gradient_series(x, vs, 100);
      const auto g2 = alternating_gradient_series(x, vs, 200);
      const bool growing = g2.last_term_log > g1.last_term_log;
      params.emplace_back("N", "100,200");
      auto r = make("ac7.classification", params, {g2.convergent ? 1.0 : 0.0, growing ? 1.0 : 0.0}, {0.0, 1.0}, 0.0);
      r.metadata = {{"last_term_log_100", g1.last_term_log}, {"last_term_log_200", g2.last_term_log}};
      out.push_back(std::move(r));
    }
  }
  return out;
}

std::vector<VerificationReport> ac8(const VerifyConfig& cfg) {
  const auto vs = VarsigmaSequence::power_k(2.0);
  std::vector<VerificationReport> out;
  const auto a = alternating_attainment(2.0, vs, 1e-15);
  out.push_back(make("ac8.attainment", {{"u", "2"}, {"varsigma", "power:2"}},
                     {a.v_bar.value_or(std::numeric_limits<double>::quiet_NaN())}, {-2.0 / 27.0}, 1e-12));
  for (double eps : {1e-1, 1e-2, 1e-3}) {
    Params params{{"u", "2"}, {"v", "0"}, {"eps", num(eps)}};
    const auto w = alternating_witness(2.0, 0.0, eps, vs, cfg.max_terms);
    auto r = make("ac8.witness", params, {w.gap}, {0.0}, eps);
    r.metadata = {{"prefix_end", static_cast<double>(w.prefix_end)},
                  {"m", static_cast<double>(w.m)},
                  {"u_residual", w.u_residual},
                  {"v_residual", w.v_residual}};
    r.passed = r.passed && w.gap >= 0.0 && w.u_residual <= 1e-12 && w.v_residual <= 1e-12;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<VerificationReport> ac9(const VerifyConfig& cfg) {
  struct Sample {
    std::string spec;
    double y;
    double u;
    bool equality;
  };
  const char* specs[] = {"linear", "quadratic", "power:0.5", "power:2", "logfam:3", "logfam:1.5", "box:1"};
  const int count = cfg.grid > 0 ? cfg.grid : 1000;
  std::mt19937_64 rng(cfg.seed ^ 0x9u);
  std::uniform_int_distribution<int> pick(0, 6);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Sample> samples;
  for (int i = 0; i < count; ++i) {
    Sample s;
    s.spec = specs[pick(rng)];
    const double right = s.spec.rfind("logfam", 0) == 0 ? -1.02 : -0.05;
    s.y = -3.0 + (right + 3.0) * unit(rng);
    s.equality = i % 2 == 1;
    s.u = unit(rng);  // fraction of 3 f'(y), resolved below
    samples.push_back(std::move(s));
  }

  std::vector<VerificationReport> reports(samples.size());
  parallel_for(samples.size(), cfg.jobs, [&](std::size_t i) {
    auto& s = samples[i];
    try {
      const auto seq = SigmaSequence::parse(s.spec);
      const double f1 = std::exp(log_eval(seq, s.y, 1, 1e-15));
      s.u = s.equality ? f1 : 3.0 * f1 * s.u;
      reports[i] = check_fenchel_young(seq, s.y, s.u, 1e-10);
    } catch (const std::exception& e) {
      reports[i] = failure("fenchel-young", e.what());
    }
  });

  double worst_neg = std::numeric_limits<double>::infinity(), worst_eq = 0.0;
  std::size_t neg_at = 0, eq_at = 0, errors = 0;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (reports[i].lhs.empty()) {
      ++errors;
      continue;
    }
    const double gap = reports[i].lhs[0];
    if (gap < worst_neg) worst_neg = gap, neg_at = i;
    if (samples[i].equality && std::fabs(gap) > worst_eq) worst_eq = std::fabs(gap), eq_at = i;
  }
  auto describe = [&](std::size_t i) {
    return samples[i].spec + " y=" + num(samples[i].y) + " u=" + num(samples[i].u);
  };
  std::vector<VerificationReport> out;
  {
    auto r = make("ac9.nonnegative", {{"samples", std::to_string(count)}, {"worst", describe(neg_at)}},
                  {std::min(0.0, worst_neg)}, {0.0}, 1e-10);
    r.metadata = {{"min_gap", worst_neg}, {"errors", static_cast<double>(errors)}};
    r.passed = r.passed && errors == 0;
    out.push_back(std::move(r));
  }
  {
    auto r = make("ac9.equality", {{"samples", std::to_string(count / 2)}, {"worst", describe(eq_at)}}, {worst_eq},
                  {0.0}, 1e-8);
    r.passed = r.passed && errors == 0;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<VerificationReport> ac10(const VerifyConfig& cfg) {
  std::vector<VerificationReport> out;
  for (const auto& row : example1_table(EvalOptions{cfg.max_terms})) {
    bool certs = true;
    for (const auto& c : row.certificates) certs = certs && c.consistent;
    auto r = make("ac10.row",
                  {{"sequence", row.sequence},
                   {"expected", std::string(to_string(row.expected))},
                   {"computed", std::string(to_string(row.computed))}},
                  {row.computed == row.expected ? 1.0 : 0.0, certs ? 1.0 : 0.0}, {1.0, 1.0}, 0.0);
    if (row.gamma) r.metadata.emplace_back("gamma", *row.gamma);
    if (row.f_at_boundary) r.metadata.emplace_back("f_at_boundary", *row.f_at_boundary);
    out.push_back(std::move(r));
  }
  return out;
}

struct Entry {
  const char* title;
  std::vector<VerificationReport> (*run)(const VerifyConfig&);
};

const std::map<std::string, Entry>& registry() {
  static const std::map<std::string, Entry> r = {
      {"ac1", {"geometric closed form", ac1}},
      {"ac2", {"conjugate exactness", ac2}},
      {"ac3", {"Gibbs minimizer formula", ac3}},
      {"ac4", {"plateau law", ac4}},
      {"ac5", {"box degenerate case", ac5}},
      {"ac6", {"gradient-sum check", ac6}},
      {"ac7", {"alternating gradient identity", ac7}},
      {"ac8", {"alternating attainment", ac8}},
      {"ac9", {"Fenchel-Young sweep", ac9}},
      {"ac10", {"domain table", ac10}},
  };
  return r;
}

}  // namespace

std::vector<std::string> claim_ids() {
  std::vector<std::string> ids;
  for (int i = 1; i <= 10; ++i) ids.push_back("ac" + std::to_string(i));
  return ids;
}

ClaimResult run_claim(const std::string& id, const VerifyConfig& cfg) {
  const auto it = registry().find(id);
  if (it == registry().end()) throw std::invalid_argument("unknown claim id: " + id);
  ClaimResult res;
  res.id = id;
  res.title = it->second.title;
  const auto t0 = Clock::now();
  try {
    res.reports = it->second.run(cfg);
  } catch (const std::exception& e) {
    res.reports.push_back(failure(id, e.what()));
  }
  res.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  res.passed = !res.reports.empty() &&
               std::all_of(res.reports.begin(), res.reports.end(), [](const auto& r) { return r.passed; });
  return res;
}

std::vector<ClaimResult> run_claims(const std::vector<std::string>& ids, const VerifyConfig& cfg) {
  for (const auto& id : ids) {
    if (!registry().count(id)) throw std::invalid_argument("unknown claim id: " + id);
  }
  std::vector<ClaimResult> out(ids.size());
  parallel_for(ids.size(), cfg.jobs, [&](std::size_t i) { out[i] = run_claim(ids[i], cfg); });
  return out;
}

}  // namespace gibbs
