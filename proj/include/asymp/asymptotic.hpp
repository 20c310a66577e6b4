#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "asymp/cones.hpp"
#include "asymp/extended_real.hpp"
#include "asymp/function_model.hpp"
#include "asymp/point.hpp"

namespace asymp {

/// Sequences t_k -> inf and d_k -> u used to approximate
///   inf { liminf f(t_k d_k) }          (sigma-g asymptotic function)
///   inf { liminf f(t_k d_k) / t_k }    (classical asymptotic function)
///
/// At step k the probed directions are d = u, d = u + radius[k] * r_j for
/// `probes_per_step` seeded draws r_j from the unit ball, and d = u + a / t_k
/// for every anchor a. Steps before `burn_in` are traced but not used.
struct LiminfSchedule {
  std::vector<double> t;
  std::vector<double> radius;
  std::size_t probes_per_step = 32;
  std::size_t burn_in = 0;
  std::uint64_t seed = 0x2545f4914f6cdd1dULL;
  std::vector<Point> anchors;

  /// t_k = 2^k and radius_k = 2^-k for k = 0..20 (so t_k d_k stays within
  /// distance 1 of the ray), 32 probes, the first 14 steps as burn-in.
  static LiminfSchedule Default();
  LiminfSchedule WithAnchors(std::vector<Point> anchors) const;
  /// Throws kInvalidArgument for inconsistent schedules, kEmptySchedule when
  /// nothing survives the burn-in.
  void Validate() const;
};

enum class EstimateMethod { kSequentialLiminf, kSublevelRecession, kAnalyticClosedForm };
enum class Confidence { kExact, kUpperBoundEstimate };

struct TraceSample {
  double t = 0.0;
  ExtendedReal value;  // min over the step's probes of f(t d)
};

struct AsymptoticEstimate {
  Point direction;
  ExtendedReal value;
  EstimateMethod method = EstimateMethod::kSequentialLiminf;
  Confidence confidence = Confidence::kUpperBoundEstimate;
  std::vector<TraceSample> trace;
};

/// Classical asymptotic function f^inf(u).
///
/// Each step contributes F_k = min over probes of f(t_k d); the estimate is the
/// smallest secant slope (F_{k+1} - F_k) / (t_{k+1} - t_k) over the post burn-in
/// tail. For f(t d) = L t + O(1) the secant recovers L without the O(1)/t bias a
/// plain quotient would carry; an infinite F_k falls back to F_k / t_k.
AsymptoticEstimate ClassicAsymptotic(const FunctionModel& f, const Point& u,
                                     const LiminfSchedule& schedule = LiminfSchedule::Default());

/// sigma-g asymptotic function via the sequential formula: min over the post
/// burn-in tail of F_k. Always an upper-bound estimate, except for constant
/// models on domains with an exact recession test (closed form).
AsymptoticEstimate SigmaGSequential(const FunctionModel& f, const Point& u,
                                    const LiminfSchedule& schedule = LiminfSchedule::Default());

/// Candidate levels lambda, ascending. A +inf sentinel is implied after the last level.
struct LevelGrid {
  std::vector<double> levels;

  /// lo + i * step for i = 0..ceil((hi - lo) / step).
  static LevelGrid Uniform(double lo, double hi, double step);
  /// Uniform step 0.01 over [min sample - 1, max sample + 1] of the finite values of f.
  static LevelGrid FromSamples(const FunctionModel& f, const std::vector<Point>& samples, double step = 0.01);
};

struct SublevelOptions {
  ConeProbe probe = ConeProbe::Default();
  /// Candidates for a point inside each nonempty sublevel set. Empty means a
  /// default lattice over [-4, 4]^d with spacing 0.5.
  std::vector<Point> base_candidates;

  std::vector<Point> BaseCandidates(std::size_t dim) const;
};

/// sigma-g value via [f^sg <= lambda] = ([f <= lambda])^inf: the first grid level
/// whose sublevel set recedes along u, +inf if none does.
///
/// Needs a quasi-convex model that is lsc or radial (radial quasi-convex models
/// have ball or whole-space sublevel sets, whose recession ignores closure);
/// throws kMissingHypothesis otherwise. Max-affine and constant models use the
/// exact polyhedral test (confidence kExact); everything else ray-tests along
/// u/|u| from the best base candidate.
AsymptoticEstimate SigmaGSublevel(const FunctionModel& f, const Point& u, const LevelGrid& levels,
                                  const SublevelOptions& options = {});

struct SublevelMembership {
  double level = 0.0;
  bool nonempty = false;  // some base candidate has f <= level
  bool in_cone = false;   // u recedes in [f <= level]
  bool exact = false;     // decided by the polyhedral path
};

/// One level of the sublevel route: is u in the recession cone of [f <= level]?
/// Same hypotheses and errors as SigmaGSublevel.
SublevelMembership SublevelRecession(const FunctionModel& f, const Point& u, double level,
                                     const SublevelOptions& options = {});

struct InfIdentityReport {
  ExtendedReal grid_inf;
  Point grid_argmin;
  ExtendedReal sigma_at_zero;
  ExtendedReal min_over_directions;
  ExtendedReal max_gap;  // largest pairwise gap among the three values
};

/// Compares inf f over `grid`, f^sg(0), and the smallest f^sg over `directions`
/// (which always includes u = 0). The grid doubles as the anchor set for the
/// sequential estimates, so the witnesses x/t_k -> 0 are in reach.
InfIdentityReport InfIdentityCheck(const FunctionModel& f, const std::vector<Point>& grid,
                                   const std::vector<Point>& directions,
                                   const LiminfSchedule& schedule = LiminfSchedule::Default());

struct BoundednessReport {
  bool all_finite = true;
  std::optional<Point> witness;  // a direction with f^sg(u) = +inf
  std::vector<AsymptoticEstimate> estimates;
};

/// For quasi-convex lsc f, f^sg is real-valued exactly when f is bounded.
/// Evaluates f^sg on the sample through the sublevel route. Throws
/// kMissingHypothesis without both annotations: a finite f^sg says nothing
/// about boundedness otherwise (the indicator of a dense non-convex set has
/// f^sg == 0 yet is unbounded above).
BoundednessReport BoundednessDiagnostic(const FunctionModel& f, const std::vector<Point>& directions,
                                        const std::optional<LevelGrid>& levels = std::nullopt,
                                        const SublevelOptions& options = {});

/// Sequential sigma-g estimates for a batch of directions, computed in parallel
/// and returned in input order.
std::vector<AsymptoticEstimate> SigmaGSequentialBatch(const FunctionModel& f, const std::vector<Point>& directions,
                                                      const LiminfSchedule& schedule = LiminfSchedule::Default());

}  // namespace asymp
