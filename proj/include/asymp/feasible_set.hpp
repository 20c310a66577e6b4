#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "asymp/point.hpp"

namespace asymp {

/// <normal, x> <= offset, with normal != 0.
struct Halfspace {
  std::vector<double> normal;
  double offset = 0.0;
};

class FeasibleSet;

namespace set_kind {

struct Whole {};

/// Axis-aligned box; bounds may be infinite.
struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
};

struct Polyhedron {
  std::vector<Halfspace> halfspaces;
  double tolerance = 1e-9;
};

struct Ball {
  Point center;
  double radius = 1.0;
  Norm norm;
};

struct Union {
  std::vector<FeasibleSet> parts;
};

struct Intersection {
  std::vector<FeasibleSet> parts;
};

/// Membership given by an arbitrary pure predicate. Convexity and closedness
/// are declarations by the caller.
struct Predicate {
  std::function<bool(std::span<const double>)> member;
  bool convex = false;
  bool closed = false;
  std::string description;
};

}  // namespace set_kind

/// A membership-testable subset of R^d. Immutable; cheap to copy.
class FeasibleSet {
 public:
  using Rep = std::variant<set_kind::Whole, set_kind::Box, set_kind::Polyhedron, set_kind::Ball,
                           set_kind::Union, set_kind::Intersection, set_kind::Predicate>;

  static FeasibleSet Whole(std::size_t dim);
  static FeasibleSet Box(std::vector<double> lo, std::vector<double> hi);
  static FeasibleSet Polyhedron(std::vector<Halfspace> halfspaces, double tolerance = 1e-9);
  static FeasibleSet Ball(Point center, double radius, Norm norm = Norm());
  static FeasibleSet Union(std::vector<FeasibleSet> parts);
  static FeasibleSet Intersection(std::vector<FeasibleSet> parts);
  static FeasibleSet Predicate(std::size_t dim, std::function<bool(std::span<const double>)> member,
                               bool convex, bool closed, std::string description);

  /// K_n = {x in K : ||x|| <= n}. Throws kInvalidArgument unless n > 0.
  FeasibleSet Truncate(double n, Norm norm = Norm()) const;

  std::size_t dim() const { return dim_; }
  bool convex() const { return convex_; }
  bool closed() const { return closed_; }
  const Rep& rep() const { return *rep_; }
  bool is_whole() const { return std::holds_alternative<set_kind::Whole>(*rep_); }

  /// Dimension-checked membership.
  bool Contains(const Point& x) const;
  /// Unchecked membership for hot loops; x.size() must equal dim().
  bool ContainsUnchecked(std::span<const double> x) const;

  std::string Describe() const;

 private:
  FeasibleSet(std::size_t dim, bool convex, bool closed, Rep rep);

  std::size_t dim_ = 0;
  bool convex_ = false;
  bool closed_ = false;
  std::shared_ptr<const Rep> rep_;
};

}  // namespace asymp
