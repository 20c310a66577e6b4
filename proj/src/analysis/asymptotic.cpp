#include "asymp/asymptotic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>

#include "asymp/error.hpp"
#include "asymp/sampling.hpp"

namespace asymp {

LiminfSchedule LiminfSchedule::Default() {
  LiminfSchedule s;
  for (int k = 0; k <= 20; ++k) {
    s.t.push_back(std::ldexp(1.0, k));
    s.radius.push_back(std::ldexp(1.0, -k));
  }
  s.probes_per_step = 32;
  s.burn_in = 14;
  return s;
}

LiminfSchedule LiminfSchedule::WithAnchors(std::vector<Point> a) const {
  LiminfSchedule s = *this;
  s.anchors = std::move(a);
  return s;
}

void LiminfSchedule::Validate() const {
  Require(t.size() == radius.size(), ErrorCode::kInvalidArgument, "schedule t and radius lengths differ");
  Require(probes_per_step >= 1, ErrorCode::kInvalidArgument, "schedule needs at least one probe per step");
  for (std::size_t k = 0; k < t.size(); ++k) {
    Require(std::isfinite(t[k]) && t[k] > 0, ErrorCode::kInvalidArgument, "schedule t values must be positive");
    Require(radius[k] >= 0, ErrorCode::kInvalidArgument, "schedule radii must be non-negative");
    if (k > 0) {
      Require(t[k] > t[k - 1], ErrorCode::kInvalidArgument, "schedule t must be strictly increasing");
      Require(radius[k] <= radius[k - 1], ErrorCode::kInvalidArgument, "schedule radii must be non-increasing");
    }
  }
  Require(burn_in < t.size(), ErrorCode::kEmptySchedule, "no schedule steps remain after burn-in");
}

namespace {

// F_k = min over the step's probe directions d of f(t_k d).
std::vector<TraceSample> SampleSteps(const FunctionModel& f, const Point& u, const LiminfSchedule& s) {
  RequireDim(f.dim(), u.dim(), "asymptotic direction");
  s.Validate();
  for (const auto& a : s.anchors) RequireDim(f.dim(), a.dim(), "schedule anchor");
  const std::size_t d = f.dim();
  std::vector<TraceSample> trace;
  trace.reserve(s.t.size());
  std::vector<double> x(d);
  for (std::size_t k = 0; k < s.t.size(); ++k) {
    const double t = s.t[k];
    ExtendedReal best = ExtendedReal::PosInf();
    auto probe = [&](auto&& coord) {
      for (std::size_t i = 0; i < d; ++i) x[i] = t * coord(i);
      best = Min(best, f(x));
    };
    probe([&](std::size_t i) { return u[i]; });
    auto rng = StreamRng(s.seed, k);
    for (std::size_t j = 0; j < s.probes_per_step; ++j) {
      const Point r = SampleUnitBall(d, rng);
      probe([&](std::size_t i) { return u[i] + s.radius[k] * r[i]; });
    }
    for (const auto& a : s.anchors) probe([&](std::size_t i) { return u[i] + a[i] / t; });
    trace.push_back({t, best});
  }
  return trace;
}

// Closed form for constant models whose domain has an exact recession test.
std::optional<bool> ConstantDomainRecedes(const FunctionModel& f, const Point& u) {
  if (!std::holds_alternative<ConstantForm>(f.form())) return std::nullopt;
  if (u.is_zero()) return true;
  return ExactRecessionContains(f.domain(), u.coords());
}

}  // namespace

AsymptoticEstimate ClassicAsymptotic(const FunctionModel& f, const Point& u, const LiminfSchedule& schedule) {
  AsymptoticEstimate est;
  est.direction = u;
  est.method = EstimateMethod::kSequentialLiminf;
  est.trace = SampleSteps(f, u, schedule);
  if (const auto recedes = ConstantDomainRecedes(f, u)) {
    est.method = EstimateMethod::kAnalyticClosedForm;
    est.confidence = Confidence::kExact;
    est.value = *recedes ? ExtendedReal(0.0) : ExtendedReal::PosInf();
    return est;
  }
  ExtendedReal best = ExtendedReal::PosInf();
  const auto& tr = est.trace;
  for (std::size_t k = schedule.burn_in; k < tr.size(); ++k) {
    if (!tr[k].value.is_finite()) {
      best = Min(best, tr[k].value);
      continue;
    }
    if (k + 1 < tr.size() && tr[k + 1].value.is_finite()) {
      const double slope = (tr[k + 1].value.value() - tr[k].value.value()) / (tr[k + 1].t - tr[k].t);
      best = Min(best, ExtendedReal(slope));
    } else if (k + 1 == tr.size() && k == schedule.burn_in) {
      best = Min(best, ExtendedReal(tr[k].value.value() / tr[k].t));
    }
  }
  est.value = best;
  return est;
}

AsymptoticEstimate SigmaGSequential(const FunctionModel& f, const Point& u, const LiminfSchedule& schedule) {
  AsymptoticEstimate est;
  est.direction = u;
  est.method = EstimateMethod::kSequentialLiminf;
  est.trace = SampleSteps(f, u, schedule);
  if (const auto recedes = ConstantDomainRecedes(f, u)) {
    est.method = EstimateMethod::kAnalyticClosedForm;
    est.confidence = Confidence::kExact;
    est.value = *recedes ? ExtendedReal(std::get<ConstantForm>(f.form()).value) : ExtendedReal::PosInf();
    return est;
  }
  ExtendedReal best = ExtendedReal::PosInf();
  for (std::size_t k = schedule.burn_in; k < est.trace.size(); ++k) best = Min(best, est.trace[k].value);
  est.value = best;
  return est;
}

std::vector<AsymptoticEstimate> SigmaGSequentialBatch(const FunctionModel& f, const std::vector<Point>& directions,
                                                      const LiminfSchedule& schedule) {
  schedule.Validate();
  for (const auto& u : directions) RequireDim(f.dim(), u.dim(), "asymptotic direction");
  std::vector<AsymptoticEstimate> out(directions.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(directions.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = SigmaGSequential(f, directions[i], schedule);
    } catch (...) {
#pragma omp critical(asymp_batch_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

LevelGrid LevelGrid::Uniform(double lo, double hi, double step) {
  Require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi, ErrorCode::kInvalidArgument,
          "level grid needs finite bounds lo <= hi");
  Require(std::isfinite(step) && step > 0, ErrorCode::kInvalidArgument, "level grid step must be positive");
  const double count = std::ceil((hi - lo) / step - 1e-9);
  Require(count <= 1e7, ErrorCode::kInvalidArgument, "level grid too fine for its range");
  LevelGrid g;
  const auto n = static_cast<std::size_t>(count);
  g.levels.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) g.levels.push_back(lo + static_cast<double>(i) * step);
  return g;
}

LevelGrid LevelGrid::FromSamples(const FunctionModel& f, const std::vector<Point>& samples, double step) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& x : samples) {
    const ExtendedReal v = f.Evaluate(x);
    if (!v.is_finite()) continue;
    lo = std::min(lo, v.value());
    hi = std::max(hi, v.value());
  }
  Require(std::isfinite(lo), ErrorCode::kEmptySample, "no sample point has a finite value of " + f.description());
  return Uniform(lo - 1.0, hi + 1.0, step);
}

std::vector<Point> SublevelOptions::BaseCandidates(std::size_t dim) const {
  if (!base_candidates.empty()) return base_candidates;
  for (double h : {0.5, 1.0, 2.0, 4.0}) {
    if (std::pow(8.0 / h + 1.0, static_cast<double>(dim)) <= 4096.0) {
      return BoxLattice(std::vector<double>(dim, -4.0), std::vector<double>(dim, 4.0), h);
    }
  }
  std::vector<Point> out{Point::Zero(dim)};
  for (std::size_t i = 0; i < dim; ++i) {
    for (double s : {-4.0, -2.0, -1.0, 1.0, 2.0, 4.0}) {
      std::vector<double> c(dim, 0.0);
      c[i] = s;
      out.emplace_back(std::move(c));
    }
  }
  return out;
}

namespace {

void RequireSublevelHypotheses(const FunctionModel& f) {
  const auto& tr = f.traits();
  if (!tr.quasi_convex || !(tr.lsc || tr.radial)) {
    Fail(ErrorCode::kMissingHypothesis,
         "sublevel route needs a quasi-convex model that is lsc or radial; " + f.description() +
             " lacks the annotation (without it the sublevel identity fails, e.g. for the indicator of a dense "
             "non-convex set)");
  }
}

// Shared state for the sublevel route: the base candidate with the smallest
// value serves every level it belongs to.
class SublevelContext {
 public:
  SublevelContext(const FunctionModel& f, const SublevelOptions& options) : f_(f), options_(options) {
    RequireSublevelHypotheses(f);
    options.probe.Validate();
    best_value_ = ExtendedReal::PosInf();
    for (const auto& c : options.BaseCandidates(f.dim())) {
      RequireDim(f.dim(), c.dim(), "sublevel base candidate");
      const ExtendedReal v = f(c.coords());
      if (v < best_value_) {
        best_value_ = v;
        best_base_ = c;
      }
    }
  }

  SublevelMembership Test(const Point& u, const Point& unit_u, double level) const {
    SublevelMembership m;
    m.level = level;
    m.nonempty = best_value_ <= ExtendedReal(level);
    if (!m.nonempty) return m;
    if (u.is_zero()) {
      m.in_cone = true;
      m.exact = true;
      return m;
    }
    if (const auto exact = ExactPath(u, level)) {
      m.in_cone = *exact;
      m.exact = true;
      return m;
    }
    const double lvl = level;
    const FunctionModel& f = f_;
    const FeasibleSet sub = FeasibleSet::Predicate(
        f.dim(), [&f, lvl](std::span<const double> x) { return f(x) <= ExtendedReal(lvl); }, true, true,
        "[f <= level]");
    m.in_cone = RecessionMembershipConvex(sub, unit_u, *best_base_, options_.probe).in_cone();
    return m;
  }

 private:
  std::optional<bool> ExactPath(const Point& u, double level) const {
    if (const auto* c = std::get_if<ConstantForm>(&f_.form())) {
      if (c->value > level) return false;
      return ExactRecessionContains(f_.domain(), u.coords(), options_.probe.tolerance);
    }
    if (const auto* m = std::get_if<MaxAffineForm>(&f_.form())) {
      std::vector<Halfspace> hs;
      for (const auto& piece : m->pieces) {
        const bool flat = std::all_of(piece.slope.begin(), piece.slope.end(), [](double a) { return a == 0.0; });
        if (flat) continue;  // the level test above already covers constant pieces through the sample
        hs.push_back({piece.slope, piece.offset + level});
      }
      std::vector<FeasibleSet> parts{f_.domain()};
      if (!hs.empty()) parts.push_back(FeasibleSet::Polyhedron(std::move(hs)));
      return ExactRecessionContains(FeasibleSet::Intersection(std::move(parts)), u.coords(),
                                    options_.probe.tolerance);
    }
    return std::nullopt;
  }

  const FunctionModel& f_;
  const SublevelOptions& options_;
  ExtendedReal best_value_;
  std::optional<Point> best_base_;
};

Point UnitOrZero(const Point& u) {
  const double len = u.norm(Norm());
  if (len == 0.0) return u;
  return u * (1.0 / len);
}

}  // namespace

SublevelMembership SublevelRecession(const FunctionModel& f, const Point& u, double level,
                                     const SublevelOptions& options) {
  RequireDim(f.dim(), u.dim(), "asymptotic direction");
  const SublevelContext ctx(f, options);
  return ctx.Test(u, UnitOrZero(u), level);
}

AsymptoticEstimate SigmaGSublevel(const FunctionModel& f, const Point& u, const LevelGrid& levels,
                                  const SublevelOptions& options) {
  RequireDim(f.dim(), u.dim(), "asymptotic direction");
  Require(std::is_sorted(levels.levels.begin(), levels.levels.end()), ErrorCode::kInvalidArgument,
          "level grid must be ascending");
  const SublevelContext ctx(f, options);
  const Point unit_u = UnitOrZero(u);

  AsymptoticEstimate est;
  est.direction = u;
  est.method = EstimateMethod::kSublevelRecession;
  est.confidence = Confidence::kExact;

  // Sublevel sets are nested, so admission is monotone in the level: bisect for
  // the first admitting grid level.
  std::size_t lo = 0;
  std::size_t hi = levels.levels.size();
  bool all_exact = true;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    const SublevelMembership m = ctx.Test(u, unit_u, levels.levels[mid]);
    all_exact = all_exact && (m.exact || !m.nonempty);
    est.trace.push_back({levels.levels[mid], m.nonempty && m.in_cone ? ExtendedReal(1.0) : ExtendedReal(0.0)});
    if (m.nonempty && m.in_cone) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  est.value = lo < levels.levels.size() ? ExtendedReal(levels.levels[lo]) : ExtendedReal::PosInf();
  if (!all_exact) est.confidence = Confidence::kUpperBoundEstimate;
  return est;
}

namespace {

ExtendedReal Gap(const ExtendedReal& a, const ExtendedReal& b) {
  if (a == b) return ExtendedReal(0.0);
  if (!a.is_finite() || !b.is_finite()) return ExtendedReal::PosInf();
  return ExtendedReal(std::abs(a.value() - b.value()));
}

}  // namespace

InfIdentityReport InfIdentityCheck(const FunctionModel& f, const std::vector<Point>& grid,
                                   const std::vector<Point>& directions, const LiminfSchedule& schedule) {
  Require(!grid.empty(), ErrorCode::kEmptyGrid, "inf identity check needs a non-empty grid");
  InfIdentityReport r;
  r.grid_inf = ExtendedReal::PosInf();
  r.grid_argmin = grid.front();
  for (const auto& x : grid) {
    const ExtendedReal v = f.Evaluate(x);
    if (v < r.grid_inf) {
      r.grid_inf = v;
      r.grid_argmin = x;
    }
  }
  r.sigma_at_zero = SigmaGSequential(f, Point::Zero(f.dim()), schedule.WithAnchors(grid)).value;
  r.min_over_directions = r.sigma_at_zero;
  for (const auto& e : SigmaGSequentialBatch(f, directions, schedule)) {
    r.min_over_directions = Min(r.min_over_directions, e.value);
  }
  r.max_gap = Max(Max(Gap(r.grid_inf, r.sigma_at_zero), Gap(r.grid_inf, r.min_over_directions)),
                  Gap(r.sigma_at_zero, r.min_over_directions));
  return r;
}

BoundednessReport BoundednessDiagnostic(const FunctionModel& f, const std::vector<Point>& directions,
                                        const std::optional<LevelGrid>& levels, const SublevelOptions& options) {
  RequireSublevelHypotheses(f);
  const LevelGrid grid = levels ? *levels : LevelGrid::FromSamples(f, options.BaseCandidates(f.dim()));
  BoundednessReport r;
  for (const auto& u : directions) {
    r.estimates.push_back(SigmaGSublevel(f, u, grid, options));
    if (r.all_finite && !r.estimates.back().value.is_finite()) {
      r.all_finite = false;
      r.witness = u;
    }
  }
  return r;
}

}  // namespace asymp
