#pragma once

// Exponent sequences sigma_n for f(y) = sum_n exp(sigma_n * y).

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace gibbs {

using Index = std::int64_t;

enum class Family { Linear, Power, LogFam, LogLog, Quadratic, BoxTriple, Custom };

std::string_view to_string(Family f) noexcept;

/// User-supplied exponents. The library trusts the declared values and does
/// not try to certify convergence of arbitrary generators.
struct CustomSigma {
  std::function<double(Index)> generator;
  double declared_alpha = 0.0;
  /// Lower bound on sigma_{n+1} - sigma_n for every n >= start_index; must be > 0.
  double declared_gap = 0.0;
};

/// Exponent family with its analytic metadata.
///
/// LogFam and LogLog are indexed from n = 3 so that sigma_n > 0 throughout.
/// For LogFam with strongly negative theta the start moves further right, to
/// the first index where sigma_n > 0 and sigma is increasing.
///
/// BoxTriple is the spectrum kappa*(k^2+l^2+m^2) over k,l,m >= 1, flattened in
/// the order produced by enumerate_box (n = 1 is the ground state).
class SigmaSequence {
 public:
  static SigmaSequence linear();
  static SigmaSequence power(double theta);
  static SigmaSequence logfam(double theta);
  static SigmaSequence loglog();
  static SigmaSequence quadratic();
  static SigmaSequence box(double kappa);
  static SigmaSequence custom(CustomSigma spec, Index start_index = 1);

  /// Mini-grammar: linear | power:<t> | logfam:<t> | loglog | quadratic | box:<k>.
  /// Throws std::invalid_argument on malformed input.
  static SigmaSequence parse(std::string_view text);

  Family family() const noexcept { return family_; }
  /// theta for Power/LogFam, kappa for BoxTriple, 0 otherwise.
  double parameter() const noexcept { return param_; }
  Index start_index() const noexcept { return start_; }
  const CustomSigma* custom_spec() const noexcept { return custom_.get(); }

  /// Canonical mini-grammar form ("custom" for Custom sequences).
  std::string spec() const;

 private:
  SigmaSequence(Family f, double param, Index start) : family_(f), param_(param), start_(start) {}

  Family family_;
  double param_;
  Index start_;
  std::shared_ptr<const CustomSigma> custom_;
};

/// sigma_n. Throws gibbs::DomainError when n < start_index.
double sigma(const SigmaSequence& seq, Index n);

/// Smallest exponent, sigma at start_index.
double sigma_min(const SigmaSequence& seq);

/// A delta with sigma_{n+1} - sigma_n >= delta for all n >= N. Zero when the
/// increments are not bounded away from zero (decreasing-increment families,
/// and BoxTriple whose flattened spectrum has repeated levels); callers must
/// then use an integral or lattice-count tail certificate.
double increment_gap(const SigmaSequence& seq, Index N);

struct BoxState {
  std::array<int, 3> triple;
  double sigma;
};

/// First `budget` triples (k,l,m), k,l,m >= 1, ordered by kappa*(k^2+l^2+m^2)
/// ascending, ties broken lexicographically.
std::vector<BoxState> enumerate_box(double kappa, std::size_t budget);

/// Distinct values s = k^2+l^2+m^2 <= max_level that occur, with the number
/// of ordered triples producing each.
struct BoxLevel {
  std::int64_t level;
  std::int64_t multiplicity;
};
std::vector<BoxLevel> box_levels(std::int64_t max_level);

/// Coefficients varsigma_n of the alternating family g_n(x,y) = exp(nx + (-1)^n varsigma_n y).
/// Every family satisfies varsigma_n / n -> infinity.
class VarsigmaSequence {
 public:
  enum class Kind { PowerK, ExpAlpha, ExpSquare };

  static VarsigmaSequence power_k(double k);     // n^k, k > 1
  static VarsigmaSequence exp_alpha(double a);   // exp(a n), a > 0
  static VarsigmaSequence exp_square();          // exp(n^2)

  /// Grammar: power:<k> | exp:<a> | expsq
  static VarsigmaSequence parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }
  std::string spec() const;

  double value(Index n) const;
  double log_value(Index n) const;

 private:
  VarsigmaSequence(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
};

}  // namespace gibbs
