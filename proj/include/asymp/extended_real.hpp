#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace asymp {

/// A value in R u {-inf, +inf}.
///
/// Comparison is a total order with -inf < every finite value < +inf. Sums that
/// would pair +inf with -inf raise ErrorCode::kUndefinedArithmetic instead of
/// producing NaN, and constructing from NaN raises ErrorCode::kNotANumber.
class ExtendedReal {
 public:
  enum class Kind : std::uint8_t { kNegInf, kFinite, kPosInf };

  constexpr ExtendedReal() = default;
  // Implicit on purpose: finite doubles are the common case. +-inf doubles map
  // to the matching infinite kinds.
  ExtendedReal(double value);  // NOLINT(google-explicit-constructor)

  static constexpr ExtendedReal PosInf() { return ExtendedReal(Kind::kPosInf); }
  static constexpr ExtendedReal NegInf() { return ExtendedReal(Kind::kNegInf); }

  constexpr Kind kind() const { return kind_; }
  constexpr bool is_finite() const { return kind_ == Kind::kFinite; }
  constexpr bool is_pos_inf() const { return kind_ == Kind::kPosInf; }
  constexpr bool is_neg_inf() const { return kind_ == Kind::kNegInf; }

  /// Finite value; throws kInvalidArgument on an infinite value.
  double value() const;
  /// IEEE double with infinities mapped to +-HUGE_VAL.
  double to_double() const;

  std::strong_ordering operator<=>(const ExtendedReal& other) const;
  bool operator==(const ExtendedReal& other) const = default;

  ExtendedReal operator-() const;
  ExtendedReal& operator+=(const ExtendedReal& rhs);
  ExtendedReal& operator-=(const ExtendedReal& rhs);
  friend ExtendedReal operator+(ExtendedReal lhs, const ExtendedReal& rhs) { return lhs += rhs; }
  friend ExtendedReal operator-(ExtendedReal lhs, const ExtendedReal& rhs) { return lhs -= rhs; }

  /// Scaling by a finite factor. 0 * inf is undefined and throws.
  ExtendedReal Scaled(double factor) const;

  std::string ToString() const;

 private:
  constexpr explicit ExtendedReal(Kind kind) : kind_(kind) {}

  Kind kind_ = Kind::kFinite;
  double value_ = 0.0;
};

std::ostream& operator<<(std::ostream& os, const ExtendedReal& x);

inline ExtendedReal Min(const ExtendedReal& a, const ExtendedReal& b) { return b < a ? b : a; }
inline ExtendedReal Max(const ExtendedReal& a, const ExtendedReal& b) { return a < b ? b : a; }

/// Infimum of a range; +inf for an empty range.
template <typename Range>
ExtendedReal Infimum(const Range& values) {
  ExtendedReal best = ExtendedReal::PosInf();
  for (const auto& v : values) best = Min(best, ExtendedReal(v));
  return best;
}

/// Supremum of a range; -inf for an empty range.
template <typename Range>
ExtendedReal Supremum(const Range& values) {
  ExtendedReal best = ExtendedReal::NegInf();
  for (const auto& v : values) best = Max(best, ExtendedReal(v));
  return best;
}

}  // namespace asymp
