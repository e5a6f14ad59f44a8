#pragma once

#include <string>

namespace gibbs {

/// A value in the extended real line. Infinities are explicit variants,
/// never IEEE sentinels.
class ExtReal {
 public:
  enum class Kind { Finite, PosInf, NegInf };

  constexpr ExtReal() = default;

  static ExtReal finite(double v);
  static constexpr ExtReal pos_inf() { return ExtReal(Kind::PosInf, 0.0); }
  static constexpr ExtReal neg_inf() { return ExtReal(Kind::NegInf, 0.0); }

  constexpr Kind kind() const noexcept { return kind_; }
  constexpr bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  constexpr bool is_pos_inf() const noexcept { return kind_ == Kind::PosInf; }
  constexpr bool is_neg_inf() const noexcept { return kind_ == Kind::NegInf; }

  // Throws std::logic_error on an infinite value.
  double value() const;

  // Finite value or +-HUGE_VAL; only for numeric comparisons in tests/output.
  double as_double() const noexcept;

  std::string to_string() const;

  friend bool operator==(const ExtReal&, const ExtReal&) = default;

 private:
  constexpr ExtReal(Kind k, double v) : kind_(k), value_(v) {}

  Kind kind_ = Kind::Finite;
  double value_ = 0.0;
};

ExtReal operator+(const ExtReal& a, const ExtReal& b);
ExtReal operator*(double scale, const ExtReal& a);

}  // namespace gibbs
