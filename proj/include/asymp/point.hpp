#pragma once

#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

namespace asymp {

/// A p-norm on R^d, p in [1, inf]. Euclidean unless chosen otherwise.
class Norm {
 public:
  constexpr Norm() = default;
  static Norm Euclidean() { return Norm(); }
  static Norm Max();
  /// Throws kInvalidArgument unless p >= 1 (p may be +inf).
  static Norm P(double p);

  double p() const { return p_; }
  bool is_max() const;
  double operator()(std::span<const double> v) const;

  bool operator==(const Norm&) const = default;

 private:
  explicit constexpr Norm(double p) : p_(p) {}
  double p_ = 2.0;
};

/// A point of R^d with finite coordinates.
class Point {
 public:
  Point() = default;
  explicit Point(std::vector<double> coords);
  Point(std::initializer_list<double> coords);
  static Point Zero(std::size_t dim) { return Point(std::vector<double>(dim, 0.0)); }

  std::size_t dim() const { return coords_.size(); }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::span<const double> coords() const { return coords_; }
  operator std::span<const double>() const { return coords_; }  // NOLINT

  double norm(Norm n = Norm()) const { return n(coords_); }
  bool is_zero() const;

  Point operator+(const Point& other) const;
  Point operator-(const Point& other) const;
  Point operator*(double s) const;
  friend Point operator*(double s, const Point& p) { return p * s; }

  /// Lexicographic order on coordinates; used for deterministic tie-breaking.
  auto operator<=>(const Point& other) const = default;

 private:
  std::vector<double> coords_;
};

std::ostream& operator<<(std::ostream& os, const Point& p);

double Dot(std::span<const double> a, std::span<const double> b);

/// Throws kDimensionMismatch when the dimensions differ.
void RequireDim(std::size_t expected, std::size_t actual, const char* what);

}  // namespace asymp
