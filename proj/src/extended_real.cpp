#include "gibbs/extended_real.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gibbs {

ExtReal ExtReal::finite(double v) {
  if (!std::isfinite(v)) {
    throw std::invalid_argument("ExtReal::finite: non-finite value " + std::to_string(v));
  }
  return ExtReal(Kind::Finite, v);
}

double ExtReal::value() const {
  if (kind_ != Kind::Finite) {
    throw std::logic_error("ExtReal::value called on " + to_string());
  }
  return value_;
}

double ExtReal::as_double() const noexcept {
  switch (kind_) {
    case Kind::PosInf:
      return HUGE_VAL;
    case Kind::NegInf:
      return -HUGE_VAL;
    case Kind::Finite:
      break;
  }
  return value_;
}

std::string ExtReal::to_string() const {
  switch (kind_) {
    case Kind::PosInf:
      return "+inf";
    case Kind::NegInf:
      return "-inf";
    case Kind::Finite:
      break;
  }
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

ExtReal operator+(const ExtReal& a, const ExtReal& b) {
  if (a.is_finite() && b.is_finite()) return ExtReal::finite(a.value() + b.value());
  if ((a.is_pos_inf() && b.is_neg_inf()) || (a.is_neg_inf() && b.is_pos_inf())) {
    throw std::domain_error("ExtReal: +inf + -inf is undefined");
  }
  return a.is_finite() ? b : a;
}

ExtReal operator*(double scale, const ExtReal& a) {
  if (a.is_finite()) return ExtReal::finite(scale * a.value());
  if (scale == 0.0) return ExtReal::finite(0.0);  // 0 * inf := 0
  const bool positive = (scale > 0.0) == a.is_pos_inf();
  return positive ? ExtReal::pos_inf() : ExtReal::neg_inf();
}

}  // namespace gibbs
