#include "asymp/function_model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "asymp/detail/overloaded.hpp"
#include "asymp/error.hpp"
#include "asymp/sampling.hpp"

namespace asymp {

namespace {

// Points likely to sit inside the domain: the origin clamped into boxes, ball
// centres, and a few points along the axes.
void CollectHints(const FeasibleSet& set, std::vector<Point>& out) {
  std::visit(detail::Overloaded{
                 [&](const set_kind::Box& b) {
                   std::vector<double> c(b.lo.size());
                   for (std::size_t i = 0; i < c.size(); ++i) c[i] = std::clamp(0.0, b.lo[i], b.hi[i]);
                   out.emplace_back(std::move(c));
                 },
                 [&](const set_kind::Ball& b) { out.push_back(b.center); },
                 [&](const set_kind::Union& u) {
                   for (const auto& p : u.parts) CollectHints(p, out);
                 },
                 [&](const set_kind::Intersection& s) {
                   for (const auto& p : s.parts) CollectHints(p, out);
                 },
                 [](const auto&) {},
             },
             set.rep());
}

bool LooksProper(const FunctionModel& f) {
  std::vector<Point> probes{Point::Zero(f.dim())};
  CollectHints(f.domain(), probes);
  for (double s : {1.0, 10.0, 100.0}) {
    for (std::size_t i = 0; i < f.dim(); ++i) {
      for (double sign : {1.0, -1.0}) {
        std::vector<double> c(f.dim(), 0.0);
        c[i] = sign * s;
        probes.emplace_back(std::move(c));
      }
    }
  }
  return std::any_of(probes.begin(), probes.end(), [&](const Point& p) { return f(p.coords()) < ExtendedReal::PosInf(); });
}

}  // namespace

FunctionModel::FunctionModel(std::size_t dim, ScalarField field, FeasibleSet domain, FunctionTraits traits,
                             std::string description, FunctionForm form)
    : dim_(dim),
      field_(std::move(field)),
      domain_(std::move(domain)),
      traits_(traits),
      description_(std::move(description)),
      form_(std::move(form)) {
  Require(static_cast<bool>(field_), ErrorCode::kInvalidArgument, "function model needs an evaluator");
  RequireDim(dim_, domain_.dim(), "function domain");
  if (const auto* c = std::get_if<ConstantForm>(&form_)) {
    Require(std::isfinite(c->value), ErrorCode::kImproperFunction, "constant must be finite");
  }
  if (!LooksProper(*this)) {
    Fail(ErrorCode::kImproperFunction, "'" + description_ + "' is +inf at every properness probe");
  }
}

FunctionModel FunctionModel::Constant(std::size_t dim, double value) {
  return Constant(FeasibleSet::Whole(dim), value);
}

FunctionModel FunctionModel::Constant(FeasibleSet domain, double value) {
  FunctionTraits traits{.quasi_convex = domain.convex(), .lsc = domain.closed(), .bounded_below = true,
                        .radial = domain.is_whole()};
  const std::size_t d = domain.dim();
  std::ostringstream desc;
  desc.precision(17);
  desc << value;
  return FunctionModel(
      d, [value](std::span<const double>) { return ExtendedReal(value); }, std::move(domain), traits,
      desc.str(), ConstantForm{value});
}

FunctionModel FunctionModel::MaxAffine(std::size_t dim, std::vector<AffinePiece> pieces, ExtendedReal floor,
                                       std::string description) {
  Require(!pieces.empty() || floor.is_finite(), ErrorCode::kInvalidArgument,
          "max-affine model needs a piece or a finite floor");
  for (const auto& p : pieces) RequireDim(dim, p.slope.size(), "affine piece");
  bool bounded_below = floor.is_finite();
  MaxAffineForm form{pieces, floor};
  auto field = [pieces = std::move(pieces), floor](std::span<const double> x) {
    ExtendedReal v = floor;
    for (const auto& p : pieces) v = Max(v, ExtendedReal(Dot(p.slope, x) - p.offset));
    return v;
  };
  FunctionTraits traits{.quasi_convex = true, .lsc = true, .bounded_below = bounded_below, .radial = false};
  return FunctionModel(dim, std::move(field), FeasibleSet::Whole(dim), traits, std::move(description),
                       std::move(form));
}

FunctionModel FunctionModel::Radial(std::size_t dim, std::function<ExtendedReal(double)> profile,
                                    FunctionTraits traits, std::string description, Norm norm) {
  traits.radial = true;
  auto field = [profile = std::move(profile), norm](std::span<const double> x) { return profile(norm(x)); };
  return FunctionModel(dim, std::move(field), FeasibleSet::Whole(dim), traits, std::move(description));
}

ExtendedReal FunctionModel::Evaluate(const Point& x) const {
  RequireDim(dim_, x.dim(), "function evaluation");
  return (*this)(x.coords());
}

ExtendedReal FunctionModel::operator()(std::span<const double> x) const {
  if (!domain_.is_whole() && !domain_.ContainsUnchecked(x)) return ExtendedReal::PosInf();
  return field_(x);
}

FunctionModel FunctionModel::WithTraits(FunctionTraits traits) const {
  FunctionModel copy = *this;
  copy.traits_ = traits;
  return copy;
}

FunctionModel FunctionModel::WithDomain(FeasibleSet domain) const {
  return FunctionModel(dim_, field_, std::move(domain), traits_, description_, form_);
}

bool SpotCheckRadial(const FunctionModel& f, int samples, std::uint64_t seed, double tolerance) {
  auto rng = StreamRng(seed, 0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> radius(0.0, 10.0);
  const std::size_t d = f.dim();
  std::vector<std::size_t> perm(d);
  for (int s = 0; s < samples; ++s) {
    std::vector<double> x(d);
    for (double& c : x) c = gauss(rng);
    const double r = radius(rng);
    double len = 0.0;
    for (double c : x) len += c * c;
    len = std::sqrt(len);
    if (len == 0.0) continue;
    for (double& c : x) c *= r / len;

    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<double> qx(d);
    for (std::size_t i = 0; i < d; ++i) qx[i] = (rng() & 1U ? -1.0 : 1.0) * x[perm[i]];

    const ExtendedReal a = f(x);
    const ExtendedReal b = f(qx);
    if (a.is_finite() && b.is_finite()) {
      if (std::abs(a.value() - b.value()) > tolerance) return false;
    } else if (a != b) {
      return false;
    }
  }
  return true;
}

}  // namespace asymp
