#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "asymp/asymptotic.hpp"
#include "asymp/bifunction_checks.hpp"
#include "asymp/bifunction_model.hpp"
#include "asymp/point.hpp"

namespace asymp {

/// Find x in K with psi(x, y) >= 0 for every y in K (K = psi.feasible()).
struct EPInstance {
  BifunctionModel psi;
  double eps_solution = 1e-9;
  double grid_resolution = 0.25;
  Norm norm;

  const FeasibleSet& K() const { return psi.feasible(); }
  void Validate() const;
};

/// Grid points x with min over y in `grid` of psi(x, y) >= -eps, in grid order.
/// Constant, y-only and difference forms skip the pairwise scan; the result is
/// the same set the scan would give, since rounding is monotone.
std::vector<Point> SolveOnGrid(const BifunctionModel& psi, const std::vector<Point>& grid, double eps);

/// SolveOnGrid over the stage grid of K_n. Throws kEmptyGrid when K_n has no
/// grid point at the instance resolution.
std::vector<Point> SolveTruncated(const EPInstance& inst, double n);

enum class CertificateMethod { kDirectSigmaG, kClassicSufficient };

struct DirectionEvidence {
  Point direction;
  /// max over the y sample of the asymptotic estimate of x -> -psi(x, y) at u.
  ExtendedReal clearing_value;
  Point best_y;
  bool cleared = false;
};

struct RECertificate {
  CertificateMethod method = CertificateMethod::kDirectSigmaG;
  std::vector<DirectionEvidence> directions;
  bool certified = false;
  std::optional<Point> witness;  // first direction no sampled y clears
  double tolerance = 1e-9;
};

std::string ToString(CertificateMethod method);

/// Sampled evidence for R^E within {0}: each direction u needs some y with
/// (-psi(., y))^sg(u) > tol. Throws kEmptySample for an empty direction or y
/// sample, kInvalidArgument for a zero direction.
RECertificate CheckREDirect(const EPInstance& inst, const std::vector<Point>& directions,
                            const std::vector<Point>& y_sample,
                            const LiminfSchedule& schedule = LiminfSchedule::Default(), double tolerance = 1e-9);

/// Same clearing rule with the classical asymptotic function. Passing implies
/// the direct check passes on the same samples, not conversely.
RECertificate CheckRESufficientClassic(const EPInstance& inst, const std::vector<Point>& directions,
                                       const std::vector<Point>& y_sample,
                                       const LiminfSchedule& schedule = LiminfSchedule::Default(),
                                       double tolerance = 1e-9);

/// Unit directions from UnitDirections(dim, count, seed) that lie in K^inf,
/// decided exactly where possible, by rays from `base` for closed convex K, and
/// by shell sampling otherwise.
std::vector<Point> RecessionDirections(const FeasibleSet& K, std::size_t count, std::uint64_t seed,
                                       const Point& base);

struct PipelineOptions {
  std::vector<double> stages{1, 2, 4, 8, 16};
  double escape_ratio = 0.9;
  std::size_t stabilization_window = 3;
  /// Doublings appended after the schedule when escape meets a passing certificate.
  std::size_t max_extra_stages = 2;
  std::size_t direction_count = 16;
  std::size_t y_sample_max = 64;
  std::uint64_t seed = 0x243f6a8885a308d3ULL;
  LiminfSchedule schedule = LiminfSchedule::Default();
  double certificate_tolerance = 1e-9;

  void Validate() const;
};

struct StageRecord {
  double n = 0.0;
  std::size_t grid_size = 0;
  std::vector<Point> solutions;
  Point representative;  // lexicographic minimum of `solutions`
  double representative_norm = 0.0;
  bool escaped = false;  // representative_norm > escape_ratio * n
};

struct TruncationTrace {
  std::vector<StageRecord> stages;
  bool escape = false;
  KSigmaRecognition k_sigma;
};

struct Solution {
  Point point;
  /// min over the final stage grid of psi(point, y), re-evaluated.
  double verification_min = 0.0;
  std::vector<Point> sample;  // final stage solution set
  double stage = 0.0;
};

struct CertificateFailed {
  Point witness;
  double stage = 0.0;
};

struct Inconclusive {
  std::string reason;
};

using EPVerdict = std::variant<Solution, CertificateFailed, Inconclusive>;

struct SolutionRecessionReport {
  std::size_t sample_size = 0;
  double max_norm = 0.0;
  double stage_radius = 0.0;
  /// Sample stays within escape_ratio * stage_radius: recession {0} as far as
  /// the grid can tell. Always a budget-limited statement.
  bool trivial = true;
  std::vector<Point> flagged_directions;
  bool budget_limited = true;
};

/// Grid samples only reveal boundedness relative to the largest stage; points
/// beyond escape_ratio * stage_radius flag their directions x / ||x||.
/// Throws kEmptySample for an empty sample.
SolutionRecessionReport SolutionSetRecession(const std::vector<Point>& sample, double stage_radius,
                                             double escape_ratio = 0.9, Norm norm = Norm());

struct PipelineResult {
  EPVerdict verdict;
  TruncationTrace trace;
  std::optional<RECertificate> direct;
  std::optional<RECertificate> classic;
  std::optional<SolutionRecessionReport> recession;
};

/// Solve on K_n for each stage; stop with a Solution once representatives
/// stabilize, with CertificateFailed when they escape and some direction
/// survives the direct certificate, and with Inconclusive when the budget runs
/// out. Throws kEmptyStageSolution naming the first stage with no solution.
PipelineResult ExistencePipeline(const EPInstance& inst, const PipelineOptions& options = {});

/// Evenly strided subsample (at most `max_count`, first point included).
std::vector<Point> StridedSample(const std::vector<Point>& points, std::size_t max_count);

}  // namespace asymp
