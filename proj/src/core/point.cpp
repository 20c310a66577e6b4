#include "asymp/point.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "asymp/error.hpp"

namespace asymp {

Norm Norm::Max() { return Norm(std::numeric_limits<double>::infinity()); }

Norm Norm::P(double p) {
  Require(!std::isnan(p) && p >= 1.0, ErrorCode::kInvalidArgument, "p-norm needs p >= 1");
  return Norm(p);
}

bool Norm::is_max() const { return std::isinf(p_); }

double Norm::operator()(std::span<const double> v) const {
  if (is_max()) {
    double m = 0.0;
    for (double c : v) m = std::max(m, std::abs(c));
    return m;
  }
  if (p_ == 2.0) {
    double s = 0.0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
  }
  if (p_ == 1.0) {
    double s = 0.0;
    for (double c : v) s += std::abs(c);
    return s;
  }
  double s = 0.0;
  for (double c : v) s += std::pow(std::abs(c), p_);
  return std::pow(s, 1.0 / p_);
}

Point::Point(std::vector<double> coords) : coords_(std::move(coords)) {
  for (double c : coords_) {
    Require(std::isfinite(c), ErrorCode::kInvalidArgument, "point coordinates must be finite");
  }
}

Point::Point(std::initializer_list<double> coords) : Point(std::vector<double>(coords)) {}

bool Point::is_zero() const {
  for (double c : coords_) {
    if (c != 0.0) return false;
  }
  return true;
}

Point Point::operator+(const Point& other) const {
  RequireDim(dim(), other.dim(), "point sum");
  std::vector<double> out(coords_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += other.coords_[i];
  return Point(std::move(out));
}

Point Point::operator-(const Point& other) const {
  RequireDim(dim(), other.dim(), "point difference");
  std::vector<double> out(coords_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= other.coords_[i];
  return Point(std::move(out));
}

Point Point::operator*(double s) const {
  std::vector<double> out(coords_);
  for (double& c : out) c *= s;
  return Point(std::move(out));
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  os << '(';
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) os << ", ";
    os << p[i];
  }
  return os << ')';
}

double Dot(std::span<const double> a, std::span<const double> b) {
  RequireDim(a.size(), b.size(), "dot product");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void RequireDim(std::size_t expected, std::size_t actual, const char* what) {
  if (expected != actual) {
    Fail(ErrorCode::kDimensionMismatch, std::string(what) + ": expected dimension " +
                                            std::to_string(expected) + ", got " +
                                            std::to_string(actual));
  }
}

}  // namespace asymp
