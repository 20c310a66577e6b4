#include "asymp/extended_real.hpp"

#include <cmath>
#include <sstream>

#include "asymp/error.hpp"

namespace asymp {

ExtendedReal::ExtendedReal(double value) {
  if (std::isnan(value)) Fail(ErrorCode::kNotANumber, "NaN is not an extended real");
  if (std::isinf(value)) {
    kind_ = value > 0 ? Kind::kPosInf : Kind::kNegInf;
  } else {
    value_ = value;
  }
}

double ExtendedReal::value() const {
  if (!is_finite()) Fail(ErrorCode::kInvalidArgument, "value() on " + ToString());
  return value_;
}

double ExtendedReal::to_double() const {
  switch (kind_) {
    case Kind::kNegInf: return -HUGE_VAL;
    case Kind::kPosInf: return HUGE_VAL;
    case Kind::kFinite: break;
  }
  return value_;
}

std::strong_ordering ExtendedReal::operator<=>(const ExtendedReal& other) const {
  if (kind_ != other.kind_) return kind_ <=> other.kind_;
  if (kind_ != Kind::kFinite) return std::strong_ordering::equal;
  // Finite and never NaN, so the partial order is total here. -0.0 == +0.0.
  if (value_ < other.value_) return std::strong_ordering::less;
  if (value_ > other.value_) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExtendedReal ExtendedReal::operator-() const {
  switch (kind_) {
    case Kind::kNegInf: return PosInf();
    case Kind::kPosInf: return NegInf();
    case Kind::kFinite: break;
  }
  return ExtendedReal(-value_);
}

ExtendedReal& ExtendedReal::operator+=(const ExtendedReal& rhs) {
  if (is_finite() && rhs.is_finite()) {
    *this = ExtendedReal(value_ + rhs.value_);
    return *this;
  }
  if ((is_pos_inf() && rhs.is_neg_inf()) || (is_neg_inf() && rhs.is_pos_inf())) {
    Fail(ErrorCode::kUndefinedArithmetic, "(+inf) + (-inf)");
  }
  if (!is_finite()) return *this;
  kind_ = rhs.kind_;
  value_ = 0.0;
  return *this;
}

ExtendedReal& ExtendedReal::operator-=(const ExtendedReal& rhs) { return *this += -rhs; }

ExtendedReal ExtendedReal::Scaled(double factor) const {
  if (std::isnan(factor) || std::isinf(factor)) {
    Fail(ErrorCode::kInvalidArgument, "scale factor must be finite");
  }
  if (is_finite()) return ExtendedReal(value_ * factor);
  if (factor == 0.0) Fail(ErrorCode::kUndefinedArithmetic, "0 * inf");
  return factor > 0 ? *this : -*this;
}

std::string ExtendedReal::ToString() const {
  switch (kind_) {
    case Kind::kNegInf: return "-inf";
    case Kind::kPosInf: return "+inf";
    case Kind::kFinite: break;
  }
  std::ostringstream os;
  os.precision(17);
  os << value_;
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x) { return os << x.ToString(); }

}  // namespace asymp
