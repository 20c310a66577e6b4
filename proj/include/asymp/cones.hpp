#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "asymp/feasible_set.hpp"
#include "asymp/point.hpp"

namespace asymp {

/// Discretization of "for all t > 0" along a ray.
struct ConeProbe {
  std::vector<double> t_grid;
  double tolerance = 1e-9;

  /// t_j = 2^j for j = 0..20.
  static ConeProbe Default();
  double t_max() const { return t_grid.back(); }
  /// Throws kInvalidArgument unless t_grid is non-empty, positive and strictly increasing.
  void Validate() const;
};

struct RaySample {
  double t = 0.0;
  bool member = false;
};

struct ConeMembershipReport {
  enum class Verdict { kInCone, kExcluded };

  Point direction;
  Verdict verdict = Verdict::kExcluded;
  /// Exact verdicts come from the analytic path. A non-exact kInCone only means
  /// every probe stayed inside up to t_max.
  bool exact = false;
  /// For kExcluded from a ray test: a t with base + t*u outside the set.
  std::optional<double> witness_t;
  std::vector<RaySample> probes;

  bool in_cone() const { return verdict == Verdict::kInCone; }
};

/// Exact recession membership where the set's structure allows it: whole space,
/// boxes, balls, polyhedra (<a_i, u> <= tol * |a_i| |u| for every halfspace),
/// and intersections of those. std::nullopt when no exact path exists.
/// Intersections assume the set is nonempty.
std::optional<bool> ExactRecessionContains(const FeasibleSet& set, std::span<const double> u,
                                           double tolerance = 1e-9);

/// Recession membership for a closed convex set using any base point in it.
/// Throws kNonConvexSet when the set is not flagged convex and closed, and
/// kBaseNotMember when base is outside the set.
ConeMembershipReport RecessionMembershipConvex(const FeasibleSet& set, const Point& u, const Point& base,
                                               const ConeProbe& probe = ConeProbe::Default());

struct AsymptoticShell {
  double t = 1.0;
  double radius = 1.0;  // delta_k
};

struct ShellWitness {
  double t = 0.0;
  std::optional<Point> member;  // x_k in A with |x_k / t_k - u| <= delta_k
};

struct SampledConeReport {
  Point direction;
  /// kInCone iff every shell produced a witness. Positive evidence only: a
  /// kExcluded verdict means no witness was found, not that none exists.
  ConeMembershipReport::Verdict verdict = ConeMembershipReport::Verdict::kExcluded;
  std::optional<double> failed_shell_t;
  std::vector<ShellWitness> shells;

  bool in_cone() const { return verdict == ConeMembershipReport::Verdict::kInCone; }
};

struct ShellSearch {
  std::size_t random_probes = 64;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
  /// Integer lattice points are scanned when the shell ball holds at most this many.
  std::size_t lattice_budget = 4096;
};

/// Default shells t_k = 2^k, delta_k = 1/k for k = 1..20.
std::vector<AsymptoticShell> DefaultShells();

/// Searches each shell for x in A with |x/t_k - u| <= delta_k using the centre
/// t_k*u, integer lattice points, and seeded random points in the shell ball.
/// Throws kEmptySchedule for an empty schedule.
SampledConeReport AsymptoticMembershipSampled(const FeasibleSet& set, const Point& u,
                                              const std::vector<AsymptoticShell>& schedule,
                                              const ShellSearch& search = {});

struct IntersectionConeReport {
  Point direction;
  bool left_in_cone = false;                // u in (cap K_i)^inf
  std::vector<bool> right_in_cone;          // u in (K_i)^inf per set
  bool right_all = false;                   // u in cap (K_i)^inf
  bool inclusion_holds = false;             // left implies right
  bool equality_expected = false;           // all sets convex and closed
  bool equality_holds = false;
  bool all_exact = false;
};

/// Compares the recession cone of an intersection against the intersection of
/// recession cones for one direction. When every set is convex and closed the
/// two sides must agree, which needs a common base point (kMissingBasePoint).
IntersectionConeReport ConeIntersectionCheck(const std::vector<FeasibleSet>& sets, const Point& u,
                                             const ConeProbe& probe = ConeProbe::Default(),
                                             const std::optional<Point>& common_base = std::nullopt);

}  // namespace asymp
