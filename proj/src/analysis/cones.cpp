#include "asymp/cones.hpp"

#include <cmath>
#include <limits>

#include "asymp/detail/overloaded.hpp"
#include "asymp/error.hpp"
#include "asymp/sampling.hpp"

namespace asymp {

namespace {

using Verdict = ConeMembershipReport::Verdict;

double EuclideanLength(std::span<const double> v) { return Norm()(v); }

Point RayPoint(const Point& base, const Point& u, double t) {
  std::vector<double> x(base.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = base[i] + t * u[i];
  return Point(std::move(x));
}

// Smallest t = 2^j (j = 0..1023) with base + t*u outside the set, if any.
std::optional<double> FindExit(const FeasibleSet& set, const Point& base, const Point& u) {
  double t = 1.0;
  for (int j = 0; j < 1024 && std::isfinite(t); ++j, t *= 2.0) {
    std::vector<double> x(base.dim());
    bool finite = true;
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = base[i] + t * u[i];
      finite = finite && std::isfinite(x[i]);
    }
    if (!finite) break;
    if (!set.ContainsUnchecked(x)) return t;
  }
  return std::nullopt;
}

std::vector<RaySample> ProbeRay(const FeasibleSet& set, const Point& base, const Point& u, const ConeProbe& probe) {
  std::vector<RaySample> out;
  out.reserve(probe.t_grid.size());
  for (double t : probe.t_grid) out.push_back({t, set.Contains(RayPoint(base, u, t))});
  return out;
}

}  // namespace

ConeProbe ConeProbe::Default() {
  ConeProbe probe;
  for (int j = 0; j <= 20; ++j) probe.t_grid.push_back(std::ldexp(1.0, j));
  return probe;
}

void ConeProbe::Validate() const {
  Require(!t_grid.empty(), ErrorCode::kInvalidArgument, "cone probe needs at least one t");
  Require(t_grid.front() > 0, ErrorCode::kInvalidArgument, "cone probe t values must be positive");
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    Require(t_grid[i] > t_grid[i - 1], ErrorCode::kInvalidArgument, "cone probe t grid must be strictly increasing");
  }
  Require(tolerance >= 0, ErrorCode::kInvalidArgument, "cone probe tolerance must be non-negative");
}

std::optional<bool> ExactRecessionContains(const FeasibleSet& set, std::span<const double> u, double tolerance) {
  RequireDim(set.dim(), u.size(), "recession direction");
  const double u_len = EuclideanLength(u);
  return std::visit(
      detail::Overloaded{
          [](const set_kind::Whole&) -> std::optional<bool> { return true; },
          [&](const set_kind::Box& b) -> std::optional<bool> {
            for (std::size_t i = 0; i < u.size(); ++i) {
              if (std::isfinite(b.hi[i]) && u[i] > tolerance * u_len) return false;
              if (std::isfinite(b.lo[i]) && u[i] < -tolerance * u_len) return false;
            }
            return true;
          },
          [&](const set_kind::Polyhedron& p) -> std::optional<bool> {
            for (const auto& h : p.halfspaces) {
              if (Dot(h.normal, u) > tolerance * EuclideanLength(h.normal) * u_len) return false;
            }
            return true;
          },
          [&](const set_kind::Ball&) -> std::optional<bool> { return u_len == 0.0; },
          [&](const set_kind::Intersection& s) -> std::optional<bool> {
            bool all = true;
            for (const auto& part : s.parts) {
              const auto r = ExactRecessionContains(part, u, tolerance);
              if (!r) return std::nullopt;
              all = all && *r;
            }
            return all;
          },
          [](const auto&) -> std::optional<bool> { return std::nullopt; },
      },
      set.rep());
}

ConeMembershipReport RecessionMembershipConvex(const FeasibleSet& set, const Point& u, const Point& base,
                                               const ConeProbe& probe) {
  probe.Validate();
  RequireDim(set.dim(), u.dim(), "recession direction");
  RequireDim(set.dim(), base.dim(), "recession base point");
  if (!set.convex() || !set.closed()) {
    Fail(ErrorCode::kNonConvexSet,
         "ray characterization needs a closed convex set; use AsymptoticMembershipSampled for " + set.Describe());
  }
  Require(set.Contains(base), ErrorCode::kBaseNotMember, "base point is not in " + set.Describe());

  ConeMembershipReport report;
  report.direction = u;
  report.probes = ProbeRay(set, base, u, probe);

  if (const auto exact = ExactRecessionContains(set, u.coords(), probe.tolerance)) {
    report.exact = true;
    report.verdict = *exact ? Verdict::kInCone : Verdict::kExcluded;
    if (!*exact) report.witness_t = FindExit(set, base, u);
    return report;
  }

  report.verdict = Verdict::kInCone;
  for (const auto& s : report.probes) {
    if (!s.member) {
      report.verdict = Verdict::kExcluded;
      report.witness_t = s.t;
      break;
    }
  }
  return report;
}

std::vector<AsymptoticShell> DefaultShells() {
  std::vector<AsymptoticShell> shells;
  for (int k = 1; k <= 20; ++k) shells.push_back({std::ldexp(1.0, k), 1.0 / k});
  return shells;
}

namespace {

bool WithinShell(std::span<const double> x, const Point& u, double t, double radius) {
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] / t - u[i];
    s += d * d;
  }
  return std::sqrt(s) <= radius * (1.0 + 1e-12);
}

std::optional<Point> SearchShell(const FeasibleSet& set, const Point& u, const AsymptoticShell& shell,
                                 const ShellSearch& search, std::uint64_t stream) {
  const std::size_t d = u.dim();
  const Point centre = u * shell.t;
  const double reach = shell.t * shell.radius;
  if (set.Contains(centre)) return centre;

  // Integer lattice inside the shell ball, when small enough to enumerate.
  double count = 1.0;
  std::vector<long long> lo(d), hi(d);
  for (std::size_t i = 0; i < d; ++i) {
    lo[i] = static_cast<long long>(std::ceil(centre[i] - reach));
    hi[i] = static_cast<long long>(std::floor(centre[i] + reach));
    count *= static_cast<double>(std::max<long long>(0, hi[i] - lo[i] + 1));
  }
  if (count > 0 && count <= static_cast<double>(search.lattice_budget)) {
    std::vector<long long> idx(lo);
    std::vector<double> x(d);
    while (true) {
      for (std::size_t i = 0; i < d; ++i) x[i] = static_cast<double>(idx[i]);
      if (WithinShell(x, u, shell.t, shell.radius) && set.ContainsUnchecked(x)) return Point(x);
      std::size_t k = d;
      bool done = true;
      while (k > 0) {
        --k;
        if (idx[k] < hi[k]) {
          ++idx[k];
          done = false;
          break;
        }
        idx[k] = lo[k];
      }
      if (done) break;
    }
  }

  auto rng = StreamRng(search.seed, stream);
  for (std::size_t j = 0; j < search.random_probes; ++j) {
    const Point x = centre + SampleUnitBall(d, rng) * reach;
    if (WithinShell(x.coords(), u, shell.t, shell.radius) && set.Contains(x)) return x;
  }
  return std::nullopt;
}

}  // namespace

SampledConeReport AsymptoticMembershipSampled(const FeasibleSet& set, const Point& u,
                                              const std::vector<AsymptoticShell>& schedule,
                                              const ShellSearch& search) {
  Require(!schedule.empty(), ErrorCode::kEmptySchedule, "asymptotic membership needs at least one shell");
  RequireDim(set.dim(), u.dim(), "asymptotic direction");
  for (std::size_t k = 0; k < schedule.size(); ++k) {
    Require(schedule[k].t > 0 && schedule[k].radius > 0, ErrorCode::kInvalidArgument,
            "shells need positive t and radius");
    if (k > 0) {
      Require(schedule[k].t > schedule[k - 1].t, ErrorCode::kInvalidArgument, "shell t must increase");
      Require(schedule[k].radius <= schedule[k - 1].radius, ErrorCode::kInvalidArgument,
              "shell radius must not increase");
    }
  }

  SampledConeReport report;
  report.direction = u;
  report.shells.resize(schedule.size());
  const auto n = static_cast<long long>(schedule.size());
#pragma omp parallel for schedule(dynamic)
  for (long long k = 0; k < n; ++k) {
    const auto i = static_cast<std::size_t>(k);
    report.shells[i].t = schedule[i].t;
    report.shells[i].member = SearchShell(set, u, schedule[i], search, i);
  }

  report.verdict = Verdict::kInCone;
  for (const auto& s : report.shells) {
    if (!s.member) {
      report.verdict = Verdict::kExcluded;
      report.failed_shell_t = s.t;
      break;
    }
  }
  return report;
}

namespace {

// Recession membership for one side of the intersection check: exact when
// possible, ray test from the common base for closed convex sets, sampled
// shells otherwise.
bool SideMembership(const FeasibleSet& set, const Point& u, const ConeProbe& probe,
                    const std::optional<Point>& base, bool& exact) {
  if (const auto e = ExactRecessionContains(set, u.coords(), probe.tolerance)) return *e;
  exact = false;
  if (base && set.convex() && set.closed()) return RecessionMembershipConvex(set, u, *base, probe).in_cone();
  return AsymptoticMembershipSampled(set, u, DefaultShells()).in_cone();
}

}  // namespace

IntersectionConeReport ConeIntersectionCheck(const std::vector<FeasibleSet>& sets, const Point& u,
                                             const ConeProbe& probe, const std::optional<Point>& common_base) {
  Require(!sets.empty(), ErrorCode::kInvalidArgument, "intersection check needs at least one set");
  probe.Validate();
  for (const auto& s : sets) RequireDim(sets.front().dim(), s.dim(), "intersection check");
  RequireDim(sets.front().dim(), u.dim(), "intersection check direction");

  IntersectionConeReport report;
  report.direction = u;
  report.equality_expected = true;
  for (const auto& s : sets) report.equality_expected = report.equality_expected && s.convex() && s.closed();
  if (report.equality_expected && !common_base) {
    Fail(ErrorCode::kMissingBasePoint, "closed convex intersection check needs a common base point");
  }
  if (common_base) {
    for (const auto& s : sets) {
      Require(s.Contains(*common_base), ErrorCode::kBaseNotMember, "common base point is not in " + s.Describe());
    }
  }

  bool exact = true;
  report.left_in_cone = SideMembership(FeasibleSet::Intersection(sets), u, probe, common_base, exact);
  report.right_all = true;
  for (const auto& s : sets) {
    const bool in = SideMembership(s, u, probe, common_base, exact);
    report.right_in_cone.push_back(in);
    report.right_all = report.right_all && in;
  }
  report.all_exact = exact;
  report.inclusion_holds = !report.left_in_cone || report.right_all;
  report.equality_holds = report.left_in_cone == report.right_all;
  return report;
}

}  // namespace asymp
