#include "asymp/bifunction_model.hpp"

#include <cmath>
#include <sstream>

#include "asymp/error.hpp"

namespace asymp {

namespace {

double CheckedFinite(double v, const std::string& description) {
  if (!std::isfinite(v)) {
    Fail(ErrorCode::kNonFiniteBifunction, "'" + description + "' produced a non-finite value");
  }
  return v;
}

}  // namespace

BifunctionModel::BifunctionModel(std::size_t dim, PairField field, FeasibleSet feasible,
                                 BifunctionTraits traits, std::string description, BifunctionForm form)
    : dim_(dim),
      field_(std::move(field)),
      feasible_(std::move(feasible)),
      traits_(traits),
      description_(std::move(description)),
      form_(std::move(form)) {
  Require(static_cast<bool>(field_), ErrorCode::kInvalidArgument, "bifunction needs an evaluator");
  RequireDim(dim_, feasible_.dim(), "bifunction feasible set");
}

BifunctionModel BifunctionModel::Constant(FeasibleSet feasible, double value) {
  Require(std::isfinite(value), ErrorCode::kNonFiniteBifunction, "constant bifunction must be finite");
  BifunctionTraits traits;
  traits.diag_nonnegative = value >= 0;
  traits.diag_zero = value == 0;
  traits.cyclically_anti_quasimonotone = value >= 0;
  traits.pseudomonotone = value < 0;
  traits.y_quasi_convex = true;
  traits.x_quasi_concave = true;
  const std::size_t d = feasible.dim();
  std::ostringstream desc;
  desc.precision(17);
  desc << value;
  return BifunctionModel(
      d, [value](std::span<const double>, std::span<const double>) { return value; }, std::move(feasible),
      traits, desc.str(), ConstantBifunction{value});
}

BifunctionModel BifunctionModel::Difference(const FunctionModel& f, FeasibleSet feasible) {
  RequireDim(f.dim(), feasible.dim(), "difference bifunction");
  BifunctionTraits traits;
  traits.pseudomonotone = true;
  traits.cyclically_anti_quasimonotone = true;
  traits.diag_zero = true;
  traits.diag_nonnegative = true;
  traits.y_quasi_convex = f.traits().quasi_convex;
  traits.x_quasi_concave = f.traits().quasi_convex;
  std::string description = "f(y) - f(x) with f = " + f.description();
  auto field = [f, description](std::span<const double> x, std::span<const double> y) {
    const ExtendedReal fy = f(y);
    const ExtendedReal fx = f(x);
    if (!fx.is_finite() || !fy.is_finite()) {
      Fail(ErrorCode::kNonFiniteBifunction, "'" + description + "' needs f finite on K");
    }
    return fy.value() - fx.value();
  };
  const std::size_t d = f.dim();
  return BifunctionModel(d, std::move(field), std::move(feasible), traits, std::move(description),
                         DifferenceBifunction{f});
}

BifunctionModel BifunctionModel::YOnly(FeasibleSet feasible, std::function<double(std::span<const double>)> g,
                                       std::string description) {
  const std::size_t d = feasible.dim();
  BifunctionTraits traits;
  traits.x_quasi_concave = true;
  auto field = [g](std::span<const double>, std::span<const double> y) { return g(y); };
  return BifunctionModel(d, std::move(field), std::move(feasible), traits, std::move(description),
                         YOnlyBifunction{std::move(g)});
}

double BifunctionModel::Evaluate(const Point& x, const Point& y) const {
  RequireDim(dim_, x.dim(), "bifunction x");
  RequireDim(dim_, y.dim(), "bifunction y");
  return (*this)(x.coords(), y.coords());
}

double BifunctionModel::operator()(std::span<const double> x, std::span<const double> y) const {
  return CheckedFinite(field_(x, y), description_);
}

FunctionModel BifunctionModel::NegatedSection(const Point& y) const {
  RequireDim(dim_, y.dim(), "section point");
  const std::string desc = "-psi(., " + [&] {
    std::ostringstream os;
    os.precision(17);
    os << y;
    return os.str();
  }() + ") with psi = " + description_;

  if (const auto* c = std::get_if<ConstantBifunction>(&form_)) {
    return FunctionModel::Constant(feasible_, -c->value);
  }
  if (const auto* g = std::get_if<YOnlyBifunction>(&form_)) {
    return FunctionModel::Constant(feasible_, -CheckedFinite(g->g(y.coords()), description_));
  }

  FunctionTraits traits;
  traits.quasi_convex = traits_.x_quasi_concave && feasible_.convex();
  if (const auto* diff = std::get_if<DifferenceBifunction>(&form_)) {
    traits = diff->f.traits();
    traits.radial = traits.radial && feasible_.is_whole();
  }
  auto field = [self = *this, y](std::span<const double> x) { return ExtendedReal(-self(x, y.coords())); };
  return FunctionModel(dim_, std::move(field), feasible_, traits, desc);
}

BifunctionModel BifunctionModel::Transposed() const {
  auto field = [f = field_](std::span<const double> x, std::span<const double> y) { return f(y, x); };
  BifunctionTraits traits;
  traits.cyclically_anti_quasimonotone = traits_.cyclically_anti_quasimonotone;
  traits.diag_zero = traits_.diag_zero;
  traits.diag_nonnegative = traits_.diag_nonnegative;
  BifunctionForm form;
  if (const auto* c = std::get_if<ConstantBifunction>(&form_)) form = *c;
  return BifunctionModel(dim_, std::move(field), feasible_, traits, "transpose of " + description_, form);
}

BifunctionModel BifunctionModel::WithTraits(BifunctionTraits traits) const {
  BifunctionModel copy = *this;
  copy.traits_ = traits;
  return copy;
}

}  // namespace asymp
