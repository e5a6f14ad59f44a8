#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "gibbs/types.hpp"

namespace gibbs {

/// Point or index outside the admissible domain.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what, std::optional<DomainInfo> info = std::nullopt)
      : std::domain_error(what), info_(std::move(info)) {}

  const std::optional<DomainInfo>& info() const noexcept { return info_; }

 private:
  std::optional<DomainInfo> info_;
};

/// The requested tolerance could not be certified within the term budget.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(const std::string& what, SeriesEval best)
      : std::runtime_error(what), best_(best) {}

  /// Best partial result; its tail_bound may be +inf when no certificate applied yet.
  const SeriesEval& best() const noexcept { return best_; }

 private:
  SeriesEval best_;
};

/// A numeric procedure (root bracketing, Newton) failed. what() carries diagnostics.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A moment or optimization problem has no feasible point.
class Infeasible : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace gibbs
