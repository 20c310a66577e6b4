#pragma once

#include <cmath>
#include <numbers>
#include <span>

#include "asymp/bifunction_model.hpp"
#include "asymp/function_model.hpp"

namespace asymp::testing {

inline double EuclidRaw(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

// -1 on the ball of radius 1/2, r/5 up to radius 1, arctan r beyond.
inline ExtendedReal StepArctanProfile(double r) {
  if (r <= 0.5) return ExtendedReal(-1.0);
  if (r < 1.0) return ExtendedReal(r / 5.0);
  return ExtendedReal(std::atan(r));
}

inline FunctionModel StepArctan(std::size_t dim) {
  FunctionTraits traits;
  traits.quasi_convex = true;
  traits.bounded_below = true;
  return FunctionModel::Radial(dim, StepArctanProfile, traits, "step-arctan radial profile");
}

// Four-piece function on R with inf 0 at the origin and limit pi/2 at both ends.
inline double TentArctanRaw(double x) {
  const double s3 = std::sqrt(3.0);
  if (x <= 0) return -std::atan(x);
  if (x <= s3 / 6) return x;
  if (x < s3 / 3) return -x + s3 / 3;
  return std::atan(x);
}

inline FunctionModel TentArctan() {
  FunctionTraits traits;
  traits.bounded_below = true;
  return FunctionModel(
      1, [](std::span<const double> x) { return ExtendedReal(TentArctanRaw(x[0])); }, FeasibleSet::Whole(1),
      traits, "tent-arctan");
}

inline FunctionModel Euclid(std::size_t dim) {
  FunctionTraits traits;
  traits.quasi_convex = true;
  traits.lsc = true;
  traits.bounded_below = true;
  return FunctionModel::Radial(dim, [](double r) { return ExtendedReal(r); }, traits, "|x|");
}

inline FunctionModel SquaredNorm(std::size_t dim) {
  FunctionTraits traits;
  traits.quasi_convex = true;
  traits.lsc = true;
  traits.bounded_below = true;
  return FunctionModel::Radial(dim, [](double r) { return ExtendedReal(r * r); }, traits, "|x|^2");
}

inline FunctionModel ArctanNorm(std::size_t dim) {
  FunctionTraits traits;
  traits.quasi_convex = true;
  traits.lsc = true;
  traits.bounded_below = true;
  return FunctionModel::Radial(dim, [](double r) { return ExtendedReal(std::atan(r)); }, traits, "arctan |x|");
}

inline FunctionModel Linear(std::vector<double> c) {
  const std::size_t d = c.size();
  FunctionTraits traits;
  traits.quasi_convex = true;
  traits.lsc = true;
  return FunctionModel(
      d,
      [c](std::span<const double> x) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) s += c[i] * x[i];
        return ExtendedReal(s);
      },
      FeasibleSet::Whole(d), traits, "linear");
}

inline bool InBoxC(std::span<const double> x) { return x[0] >= 0 && x[0] <= 1 && x[1] >= 0 && x[1] <= 2; }

// 0 when x or y lies in C = [0,1] x [0,2], -1 otherwise.
inline BifunctionModel BoxGate() {
  return BifunctionModel(
      2,
      [](std::span<const double> x, std::span<const double> y) { return InBoxC(x) || InBoxC(y) ? 0.0 : -1.0; },
      FeasibleSet::Whole(2), {}, "box gate");
}

// psi(x, y) = y on R.
inline BifunctionModel YIdentity() {
  return BifunctionModel::YOnly(FeasibleSet::Whole(1), [](std::span<const double> y) { return y[0]; }, "y");
}

}  // namespace asymp::testing
