#include "asymp/feasible_set.hpp"

#include <cmath>
#include <sstream>

#include "asymp/detail/overloaded.hpp"
#include "asymp/error.hpp"

namespace asymp {

namespace {

using detail::Overloaded;

std::size_t CommonDim(const std::vector<FeasibleSet>& parts, const char* what) {
  Require(!parts.empty(), ErrorCode::kInvalidArgument, std::string(what) + " of no sets");
  for (const auto& p : parts) RequireDim(parts.front().dim(), p.dim(), what);
  return parts.front().dim();
}

}  // namespace

FeasibleSet::FeasibleSet(std::size_t dim, bool convex, bool closed, Rep rep)
    : dim_(dim), convex_(convex), closed_(closed), rep_(std::make_shared<const Rep>(std::move(rep))) {
  Require(dim >= 1, ErrorCode::kInvalidArgument, "dimension must be at least 1");
}

FeasibleSet FeasibleSet::Whole(std::size_t dim) { return FeasibleSet(dim, true, true, set_kind::Whole{}); }

FeasibleSet FeasibleSet::Box(std::vector<double> lo, std::vector<double> hi) {
  RequireDim(lo.size(), hi.size(), "box bounds");
  for (std::size_t i = 0; i < lo.size(); ++i) {
    Require(!std::isnan(lo[i]) && !std::isnan(hi[i]) && lo[i] <= hi[i], ErrorCode::kInvalidArgument,
            "box needs lo <= hi in every coordinate");
  }
  const std::size_t d = lo.size();
  return FeasibleSet(d, true, true, set_kind::Box{std::move(lo), std::move(hi)});
}

FeasibleSet FeasibleSet::Polyhedron(std::vector<Halfspace> halfspaces, double tolerance) {
  Require(!halfspaces.empty(), ErrorCode::kInvalidArgument, "polyhedron needs a halfspace");
  Require(tolerance >= 0, ErrorCode::kInvalidArgument, "tolerance must be non-negative");
  const std::size_t d = halfspaces.front().normal.size();
  for (const auto& h : halfspaces) {
    RequireDim(d, h.normal.size(), "halfspace normal");
    bool nonzero = false;
    for (double a : h.normal) {
      Require(std::isfinite(a), ErrorCode::kInvalidArgument, "halfspace normal must be finite");
      nonzero = nonzero || a != 0.0;
    }
    Require(nonzero, ErrorCode::kInvalidArgument, "halfspace normal must be nonzero");
    Require(std::isfinite(h.offset), ErrorCode::kInvalidArgument, "halfspace offset must be finite");
  }
  return FeasibleSet(d, true, true, set_kind::Polyhedron{std::move(halfspaces), tolerance});
}

FeasibleSet FeasibleSet::Ball(Point center, double radius, Norm norm) {
  Require(std::isfinite(radius) && radius >= 0, ErrorCode::kInvalidArgument,
          "ball radius must be finite and non-negative");
  const std::size_t d = center.dim();
  return FeasibleSet(d, true, true, set_kind::Ball{std::move(center), radius, norm});
}

FeasibleSet FeasibleSet::Union(std::vector<FeasibleSet> parts) {
  const std::size_t d = CommonDim(parts, "union");
  bool closed = true;
  for (const auto& p : parts) closed = closed && p.closed();
  const bool convex = parts.size() == 1 && parts.front().convex();
  return FeasibleSet(d, convex, closed, set_kind::Union{std::move(parts)});
}

FeasibleSet FeasibleSet::Intersection(std::vector<FeasibleSet> parts) {
  const std::size_t d = CommonDim(parts, "intersection");
  bool convex = true;
  bool closed = true;
  for (const auto& p : parts) {
    convex = convex && p.convex();
    closed = closed && p.closed();
  }
  return FeasibleSet(d, convex, closed, set_kind::Intersection{std::move(parts)});
}

FeasibleSet FeasibleSet::Predicate(std::size_t dim, std::function<bool(std::span<const double>)> member,
                                   bool convex, bool closed, std::string description) {
  Require(static_cast<bool>(member), ErrorCode::kInvalidArgument, "predicate set needs a predicate");
  return FeasibleSet(dim, convex, closed,
                     set_kind::Predicate{std::move(member), convex, closed, std::move(description)});
}

FeasibleSet FeasibleSet::Truncate(double n, Norm norm) const {
  Require(std::isfinite(n) && n > 0, ErrorCode::kInvalidArgument, "truncation radius must be positive");
  return Intersection({*this, Ball(Point::Zero(dim_), n, norm)});
}

bool FeasibleSet::Contains(const Point& x) const {
  RequireDim(dim_, x.dim(), "set membership");
  return ContainsUnchecked(x.coords());
}

bool FeasibleSet::ContainsUnchecked(std::span<const double> x) const {
  return std::visit(
      Overloaded{
          [](const set_kind::Whole&) { return true; },
          [&](const set_kind::Box& b) {
            for (std::size_t i = 0; i < x.size(); ++i) {
              if (x[i] < b.lo[i] || x[i] > b.hi[i]) return false;
            }
            return true;
          },
          [&](const set_kind::Polyhedron& p) {
            for (const auto& h : p.halfspaces) {
              if (Dot(h.normal, x) > h.offset + p.tolerance) return false;
            }
            return true;
          },
          [&](const set_kind::Ball& b) {
            double buf[16];
            std::vector<double> heap;
            double* diff = buf;
            if (x.size() > 16) {
              heap.resize(x.size());
              diff = heap.data();
            }
            for (std::size_t i = 0; i < x.size(); ++i) diff[i] = x[i] - b.center[i];
            return b.norm(std::span<const double>(diff, x.size())) <= b.radius;
          },
          [&](const set_kind::Union& u) {
            for (const auto& p : u.parts) {
              if (p.ContainsUnchecked(x)) return true;
            }
            return false;
          },
          [&](const set_kind::Intersection& s) {
            for (const auto& p : s.parts) {
              if (!p.ContainsUnchecked(x)) return false;
            }
            return true;
          },
          [&](const set_kind::Predicate& p) { return p.member(x); },
      },
      *rep_);
}

std::string FeasibleSet::Describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const set_kind::Whole&) { os << "R^" << dim_; },
                 [&](const set_kind::Box& b) {
                   os << "box[";
                   for (std::size_t i = 0; i < b.lo.size(); ++i) {
                     if (i) os << " x ";
                     os << b.lo[i] << "," << b.hi[i];
                   }
                   os << "]";
                 },
                 [&](const set_kind::Polyhedron& p) { os << "polyhedron(" << p.halfspaces.size() << ")"; },
                 [&](const set_kind::Ball& b) { os << "ball(" << b.center << ", " << b.radius << ")"; },
                 [&](const set_kind::Union& u) {
                   os << "union(";
                   for (std::size_t i = 0; i < u.parts.size(); ++i) os << (i ? ", " : "") << u.parts[i].Describe();
                   os << ")";
                 },
                 [&](const set_kind::Intersection& s) {
                   os << "intersection(";
                   for (std::size_t i = 0; i < s.parts.size(); ++i) os << (i ? ", " : "") << s.parts[i].Describe();
                   os << ")";
                 },
                 [&](const set_kind::Predicate& p) { os << "predicate(" << p.description << ")"; },
             },
             *rep_);
  return os.str();
}

}  // namespace asymp
