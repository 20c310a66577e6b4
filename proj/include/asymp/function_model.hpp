#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "asymp/extended_real.hpp"
#include "asymp/feasible_set.hpp"
#include "asymp/point.hpp"

namespace asymp {

using ScalarField = std::function<ExtendedReal(std::span<const double>)>;

/// Declared analytic properties. Nothing here is verified at construction.
struct FunctionTraits {
  bool quasi_convex = false;
  bool lsc = false;
  bool bounded_below = false;
  bool radial = false;

  bool operator==(const FunctionTraits&) const = default;
};

/// f == value on its domain.
struct ConstantForm {
  double value = 0.0;
};

/// One affine piece <slope, x> - offset.
struct AffinePiece {
  std::vector<double> slope;
  double offset = 0.0;
};

/// f(x) = max(floor, max_i <slope_i, x> - offset_i). Every sublevel set is a
/// polyhedron, which lets recession computations take an exact path.
struct MaxAffineForm {
  std::vector<AffinePiece> pieces;
  ExtendedReal floor = ExtendedReal::NegInf();
};

using FunctionForm = std::variant<std::monostate, ConstantForm, MaxAffineForm>;

/// Extended-real-valued function on R^d, +inf outside its effective domain.
class FunctionModel {
 public:
  /// Throws kImproperFunction when every properness probe evaluates to +inf.
  FunctionModel(std::size_t dim, ScalarField field, FeasibleSet domain, FunctionTraits traits,
                std::string description, FunctionForm form = {});

  static FunctionModel Constant(std::size_t dim, double value);
  static FunctionModel Constant(FeasibleSet domain, double value);
  static FunctionModel MaxAffine(std::size_t dim, std::vector<AffinePiece> pieces,
                                 ExtendedReal floor, std::string description = {});
  /// f(x) = profile(||x||). Only the radial trait is set; quasi-convexity is the
  /// caller's declaration (it holds for non-decreasing profiles).
  static FunctionModel Radial(std::size_t dim, std::function<ExtendedReal(double)> profile,
                              FunctionTraits traits, std::string description, Norm norm = Norm());

  std::size_t dim() const { return dim_; }
  const FeasibleSet& domain() const { return domain_; }
  const FunctionTraits& traits() const { return traits_; }
  const std::string& description() const { return description_; }
  const FunctionForm& form() const { return form_; }

  /// f(x), +inf outside the domain. Throws kDimensionMismatch.
  ExtendedReal Evaluate(const Point& x) const;
  /// Same without the dimension check.
  ExtendedReal operator()(std::span<const double> x) const;

  FunctionModel WithTraits(FunctionTraits traits) const;
  FunctionModel WithDomain(FeasibleSet domain) const;

 private:
  std::size_t dim_;
  ScalarField field_;
  FeasibleSet domain_;
  FunctionTraits traits_;
  std::string description_;
  FunctionForm form_;
};

/// Spot-checks the radial declaration: f(x) == f(Qx) for random signed
/// coordinate permutations Q (isometries of every p-norm) at sampled x.
/// Returns false on the first disagreement beyond `tolerance`.
bool SpotCheckRadial(const FunctionModel& f, int samples, std::uint64_t seed, double tolerance = 1e-9);

}  // namespace asymp
