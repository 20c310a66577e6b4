#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "asymp/asymptotic.hpp"
#include "asymp/ep_solver.hpp"
#include "asymp/function_model.hpp"

namespace asymp {

/// min f(x) subject to x in K.
struct MPInstance {
  FunctionModel f;
  FeasibleSet K;
  double grid_resolution = 0.05;
  double eps_value = 1e-9;
  Norm norm;

  void Validate() const;
};

/// psi(x, y) = f(y) - f(x) on K: x solves the equilibrium problem iff it minimizes f.
EPInstance ReduceToEP(const MPInstance& inst);

struct GrowthDirection {
  Point direction;
  AsymptoticEstimate estimate;
  bool exceeds = false;  // estimate > baseline + tolerance
};

struct GrowthCertificate {
  std::vector<GrowthDirection> directions;
  /// f^sg(0) from the sequential route with the baseline grid as anchors.
  ExtendedReal baseline;
  ExtendedReal grid_inf;
  /// min over directions of estimate - baseline.
  ExtendedReal margin;
  bool certified = false;
  std::optional<Point> witness;
  double tolerance = 1e-9;
};

/// f^sg(u) > f^sg(0) on every sampled direction. Throws kEmptySample for an
/// empty direction sample or baseline grid.
GrowthCertificate CheckGrowth(const MPInstance& inst, const std::vector<Point>& directions,
                              const std::vector<Point>& baseline_grid,
                              const LiminfSchedule& schedule = LiminfSchedule::Default(), double tolerance = 1e-9);

struct HypothesisEntry {
  std::string name;
  std::string status;  // "checked", "failed", "declared", "undeclared", "automatic", "unverifiable"
  std::string detail;
};

struct StageCrossCheck {
  double n = 0.0;
  std::size_t solver_count = 0;
  std::size_t oracle_count = 0;
  bool agree = false;
};

struct MinimizeOptions {
  PipelineOptions pipeline;
  /// The growth baseline scans the grid of K within this radius.
  double baseline_radius = 4.0;
  bool oracle_cross_check = true;
};

struct MinimizeResult {
  GrowthCertificate growth;
  bool supported = false;  // growth certified and f declared bounded below
  std::vector<HypothesisEntry> hypotheses;
  PipelineResult pipeline;
  std::vector<Point> argmin_sample;
  ExtendedReal min_value;
  std::vector<StageCrossCheck> cross_checks;
};

/// Growth certificate, then the existence pipeline on the reduced problem. A
/// failed certificate does not stop the run; it marks it unsupported.
MinimizeResult Minimize(const MPInstance& inst, const MinimizeOptions& options = {});

}  // namespace asymp
