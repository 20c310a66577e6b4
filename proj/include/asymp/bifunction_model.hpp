#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>

#include "asymp/feasible_set.hpp"
#include "asymp/function_model.hpp"
#include "asymp/point.hpp"

namespace asymp {

using PairField = std::function<double(std::span<const double>, std::span<const double>)>;

/// Declared bifunction classes. Sampled checkers can refute these, never prove them.
struct BifunctionTraits {
  bool pseudomonotone = false;
  bool cyclically_anti_quasimonotone = false;
  bool locally_dominated = false;
  bool transfer_quasi_convex = false;
  bool diag_nonnegative = false;
  bool diag_zero = false;
  bool y_quasi_convex = false;
  bool x_quasi_concave = false;
  // Annotation only: transfer semicontinuity cannot be certified from samples.
  bool transfer_usc = false;

  bool operator==(const BifunctionTraits&) const = default;
};

/// psi == value.
struct ConstantBifunction {
  double value = 0.0;
};

/// psi(x, y) = f(y) - f(x).
struct DifferenceBifunction {
  FunctionModel f;
};

/// psi(x, y) = g(y); every section x -> psi(x, y) is constant.
struct YOnlyBifunction {
  std::function<double(std::span<const double>)> g;
};

using BifunctionForm =
    std::variant<std::monostate, ConstantBifunction, DifferenceBifunction, YOnlyBifunction>;

/// Real-valued psi(x, y) on K x K.
class BifunctionModel {
 public:
  BifunctionModel(std::size_t dim, PairField field, FeasibleSet feasible, BifunctionTraits traits,
                  std::string description, BifunctionForm form = {});

  static BifunctionModel Constant(FeasibleSet feasible, double value);
  static BifunctionModel Difference(const FunctionModel& f, FeasibleSet feasible);
  static BifunctionModel YOnly(FeasibleSet feasible, std::function<double(std::span<const double>)> g,
                               std::string description);

  std::size_t dim() const { return dim_; }
  const FeasibleSet& feasible() const { return feasible_; }
  const BifunctionTraits& traits() const { return traits_; }
  const std::string& description() const { return description_; }
  const BifunctionForm& form() const { return form_; }

  /// Dimension-checked; throws kNonFiniteBifunction on a non-finite value.
  double Evaluate(const Point& x, const Point& y) const;
  double operator()(std::span<const double> x, std::span<const double> y) const;

  /// x -> -psi(x, y) on K (+inf off K). Sections of constant and y-only forms
  /// come back as ConstantForm models.
  FunctionModel NegatedSection(const Point& y) const;

  /// psi'(x, y) = psi(y, x).
  BifunctionModel Transposed() const;

  BifunctionModel WithTraits(BifunctionTraits traits) const;

 private:
  std::size_t dim_;
  PairField field_;
  FeasibleSet feasible_;
  BifunctionTraits traits_;
  std::string description_;
  BifunctionForm form_;
};

}  // namespace asymp
