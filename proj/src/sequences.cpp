#include "gibbs/sequences.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gibbs/errors.hpp"

namespace gibbs {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) {
    throw std::invalid_argument("invalid " + std::string(what) + " parameter '" +
                                std::string(text) + "'");
  }
  return value;
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

// First index >= 3 where ln n + theta ln ln n is positive and increasing.
Index logfam_start(double theta) {
  Index n = 3;
  while (true) {
    const double ln_n = std::log(static_cast<double>(n));
    const double s = ln_n + theta * std::log(ln_n);
    if (s > 0.0 && ln_n > -theta) return n;
    if (n > (Index{1} << 40)) throw std::invalid_argument("logfam: theta too negative");
    n = n < 1024 ? n + 1 : n + n / 8;
  }
}

std::int64_t count_triples_upto(std::int64_t max_level) {
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

}  // namespace

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::Linear:
      return "Linear";
    case Family::Power:
      return "Power";
    case Family::LogFam:
      return "LogFam";
    case Family::LogLog:
      return "LogLog";
    case Family::Quadratic:
      return "Quadratic";
    case Family::BoxTriple:
      return "BoxTriple";
    case Family::Custom:
      return "Custom";
  }
  return "?";
}

SigmaSequence SigmaSequence::linear() { return {Family::Linear, 0.0, 1}; }

SigmaSequence SigmaSequence::power(double theta) {
  if (!(theta > 0.0) || !std::isfinite(theta)) {
    throw std::invalid_argument("power: theta must be a positive finite number");
  }
  return {Family::Power, theta, 1};
}

SigmaSequence SigmaSequence::logfam(double theta) {
  if (!std::isfinite(theta)) throw std::invalid_argument("logfam: theta must be finite");
  return {Family::LogFam, theta, logfam_start(theta)};
}

SigmaSequence SigmaSequence::loglog() { return {Family::LogLog, 0.0, 3}; }

SigmaSequence SigmaSequence::quadratic() { return {Family::Quadratic, 0.0, 1}; }

SigmaSequence SigmaSequence::box(double kappa) {
  if (!(kappa > 0.0) || !std::isfinite(kappa)) {
    throw std::invalid_argument("box: kappa must be a positive finite number");
  }
  return {Family::BoxTriple, kappa, 1};
}

SigmaSequence SigmaSequence::custom(CustomSigma spec, Index start_index) {
  if (!spec.generator) throw std::invalid_argument("custom: generator is empty");
  if (!(spec.declared_gap > 0.0)) throw std::invalid_argument("custom: declared_gap must be > 0");
  if (!(spec.declared_alpha >= 0.0)) throw std::invalid_argument("custom: declared_alpha must be >= 0");
  if (start_index < 1) throw std::invalid_argument("custom: start_index must be >= 1");
  SigmaSequence seq{Family::Custom, 0.0, start_index};
  seq.custom_ = std::make_shared<const CustomSigma>(std::move(spec));
  return seq;
}

SigmaSequence SigmaSequence::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  const bool has_arg = colon != std::string_view::npos;
  const std::string_view arg = has_arg ? text.substr(colon + 1) : std::string_view{};

  auto no_arg = [&](SigmaSequence s) {
    if (has_arg) throw std::invalid_argument("sequence '" + std::string(head) + "' takes no parameter");
    return s;
  };
  auto need_arg = [&](std::string_view what) {
    if (!has_arg) throw std::invalid_argument("sequence '" + std::string(head) + "' needs :<" +
                                              std::string(what) + ">");
    return parse_number(arg, what);
  };

  if (head == "linear") return no_arg(linear());
  if (head == "quadratic") return no_arg(quadratic());
  if (head == "loglog") return no_arg(loglog());
  if (head == "power") return power(need_arg("theta"));
  if (head == "logfam") return logfam(need_arg("theta"));
  if (head == "box") return box(need_arg("kappa"));
  throw std::invalid_argument("unknown sequence '" + std::string(text) +
                              "' (expected linear, power:<t>, logfam:<t>, loglog, quadratic, box:<k>)");
}

std::string SigmaSequence::spec() const {
  switch (family_) {
    case Family::Linear:
      return "linear";
    case Family::Power:
      return "power:" + format_number(param_);
    case Family::LogFam:
      return "logfam:" + format_number(param_);
    case Family::LogLog:
      return "loglog";
    case Family::Quadratic:
      return "quadratic";
    case Family::BoxTriple:
      return "box:" + format_number(param_);
    case Family::Custom:
      return "custom";
  }
  return "?";
}

double sigma(const SigmaSequence& seq, Index n) {
  if (n < seq.start_index()) {
    throw DomainError("sigma: index " + std::to_string(n) + " below start index " +
                      std::to_string(seq.start_index()));
  }
  const auto x = static_cast<double>(n);
  switch (seq.family()) {
    case Family::Linear:
      return x;
    case Family::Power:
      return std::pow(x, seq.parameter());
    case Family::LogFam: {
      const double ln_n = std::log(x);
      return ln_n + seq.parameter() * std::log(ln_n);
    }
    case Family::LogLog:
      return std::log(std::log(x));
    case Family::Quadratic:
      return x * x;
    case Family::BoxTriple:
      return enumerate_box(seq.parameter(), static_cast<std::size_t>(n)).back().sigma;
    case Family::Custom:
      return seq.custom_spec()->generator(n);
  }
  return 0.0;
}

double sigma_min(const SigmaSequence& seq) { return sigma(seq, seq.start_index()); }

double increment_gap(const SigmaSequence& seq, Index N) {
  N = std::max(N, seq.start_index());
  const auto x = static_cast<double>(N);
  switch (seq.family()) {
    case Family::Linear:
      return 1.0;
    case Family::Quadratic:
      return 2.0 * x + 1.0;
    case Family::Power:
      // Increments of n^theta are nondecreasing for theta >= 1.
      if (seq.parameter() >= 1.0) return std::pow(x + 1.0, seq.parameter()) - std::pow(x, seq.parameter());
      return 0.0;
    case Family::Custom:
      return seq.custom_spec()->declared_gap;
    case Family::LogFam:
    case Family::LogLog:
    case Family::BoxTriple:
      return 0.0;
  }
  return 0.0;
}

std::vector<BoxState> enumerate_box(double kappa, std::size_t budget) {
  if (budget == 0) return {};
  std::int64_t max_level = 3;
  while (count_triples_upto(max_level) < static_cast<std::int64_t>(budget)) max_level *= 2;

  struct Raw {
    std::int64_t s;
    std::array<int, 3> t;
  };
  std::vector<Raw> raw;
  for (std::int64_t k = 1; k * k + 2 <= max_level; ++k) {
    for (std::int64_t l = 1; k * k + l * l + 1 <= max_level; ++l) {
      for (std::int64_t m = 1; k * k + l * l + m * m <= max_level; ++m) {
        raw.push_back({k * k + l * l + m * m,
                       {static_cast<int>(k), static_cast<int>(l), static_cast<int>(m)}});
      }
    }
  }
  const auto keep = std::min(budget, raw.size());
  std::partial_sort(raw.begin(), raw.begin() + static_cast<std::ptrdiff_t>(keep), raw.end(),
                    [](const Raw& a, const Raw& b) { return a.s != b.s ? a.s < b.s : a.t < b.t; });
  std::vector<BoxState> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) {
    out.push_back({raw[i].t, kappa * static_cast<double>(raw[i].s)});
  }
  return out;
}

std::vector<BoxLevel> box_levels(std::int64_t max_level) {
  if (max_level < 3) return {};
  std::vector<std::int64_t> mult(static_cast<std::size_t>(max_level) + 1, 0);
  for (std::int64_t k = 1; k * k + 2 <= max_level; ++k) {
    for (std::int64_t l = 1; k * k + l * l + 1 <= max_level; ++l) {
      for (std::int64_t m = 1; k * k + l * l + m * m <= max_level; ++m) {
        ++mult[static_cast<std::size_t>(k * k + l * l + m * m)];
      }
    }
  }
  std::vector<BoxLevel> out;
  for (std::int64_t s = 3; s <= max_level; ++s) {
    if (mult[static_cast<std::size_t>(s)] > 0) out.push_back({s, mult[static_cast<std::size_t>(s)]});
  }
  return out;
}

// ---- VarsigmaSequence ------------------------------------------------------

VarsigmaSequence VarsigmaSequence::power_k(double k) {
  if (!(k > 1.0) || !std::isfinite(k)) throw std::invalid_argument("varsigma power: k must be > 1");
  return {Kind::PowerK, k};
}

VarsigmaSequence VarsigmaSequence::exp_alpha(double a) {
  if (!(a > 0.0) || !std::isfinite(a)) throw std::invalid_argument("varsigma exp: alpha must be > 0");
  return {Kind::ExpAlpha, a};
}

VarsigmaSequence VarsigmaSequence::exp_square() { return {Kind::ExpSquare, 0.0}; }

VarsigmaSequence VarsigmaSequence::parse(std::string_view text) {
  const auto colon = text.find(':');
  const std::string_view head = text.substr(0, colon);
  if (head == "expsq" && colon == std::string_view::npos) return exp_square();
  if (colon != std::string_view::npos) {
    const auto arg = text.substr(colon + 1);
    if (head == "power") return power_k(parse_number(arg, "k"));
    if (head == "exp") return exp_alpha(parse_number(arg, "alpha"));
  }
  throw std::invalid_argument("unknown varsigma '" + std::string(text) +
                              "' (expected power:<k>, exp:<alpha>, expsq)");
}

std::string VarsigmaSequence::spec() const {
  switch (kind_) {
    case Kind::PowerK:
      return "power:" + format_number(param_);
    case Kind::ExpAlpha:
      return "exp:" + format_number(param_);
    case Kind::ExpSquare:
      return "expsq";
  }
  return "?";
}

double VarsigmaSequence::log_value(Index n) const {
  const auto x = static_cast<double>(n);
  switch (kind_) {
    case Kind::PowerK:
      return param_ * std::log(x);
    case Kind::ExpAlpha:
      return param_ * x;
    case Kind::ExpSquare:
      return x * x;
  }
  return 0.0;
}

double VarsigmaSequence::value(Index n) const {
  if (kind_ == Kind::PowerK) return std::pow(static_cast<double>(n), param_);
  return std::exp(log_value(n));
}

}  // namespace gibbs
