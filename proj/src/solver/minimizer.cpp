#include "asymp/minimizer.hpp"

#include <cmath>
#include <sstream>

#include "asymp/error.hpp"
#include "asymp/oracle/oracle.hpp"
#include "asymp/sampling.hpp"

namespace asymp {

void MPInstance::Validate() const {
  RequireDim(f.dim(), K.dim(), "objective and feasible set");
  Require(std::isfinite(grid_resolution) && grid_resolution > 0, ErrorCode::kInvalidArgument,
          "grid_resolution must be positive");
  Require(eps_value >= 0, ErrorCode::kInvalidArgument, "eps_value must be non-negative");
}

EPInstance ReduceToEP(const MPInstance& inst) {
  inst.Validate();
  return EPInstance{BifunctionModel::Difference(inst.f, inst.K), inst.eps_value, inst.grid_resolution, inst.norm};
}

GrowthCertificate CheckGrowth(const MPInstance& inst, const std::vector<Point>& directions,
                              const std::vector<Point>& baseline_grid, const LiminfSchedule& schedule,
                              double tolerance) {
  inst.Validate();
  Require(!directions.empty(), ErrorCode::kEmptySample, "growth certificate needs at least one direction");
  Require(!baseline_grid.empty(), ErrorCode::kEmptySample, "growth certificate needs a baseline grid");
  const FunctionModel f = inst.f.domain().is_whole()
                              ? inst.f.WithDomain(inst.K)
                              : inst.f.WithDomain(FeasibleSet::Intersection({inst.f.domain(), inst.K}));

  GrowthCertificate cert;
  cert.tolerance = tolerance;
  cert.grid_inf = ExtendedReal::PosInf();
  for (const auto& x : baseline_grid) cert.grid_inf = Min(cert.grid_inf, f.Evaluate(x));
  cert.baseline = SigmaGSequential(f, Point::Zero(f.dim()), schedule.WithAnchors(baseline_grid)).value;

  const auto estimates = SigmaGSequentialBatch(f, directions, schedule);
  cert.margin = ExtendedReal::PosInf();
  cert.certified = true;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    GrowthDirection g{directions[i], estimates[i], false};
    const ExtendedReal est = estimates[i].value;
    if (cert.baseline.is_finite() && est.is_finite()) {
      cert.margin = Min(cert.margin, ExtendedReal(est.value() - cert.baseline.value()));
    } else if (est == ExtendedReal::NegInf() || cert.baseline == ExtendedReal::PosInf()) {
      cert.margin = ExtendedReal::NegInf();
    }
    g.exceeds = est > cert.baseline + ExtendedReal(tolerance);
    if (!g.exceeds && cert.certified) {
      cert.certified = false;
      cert.witness = directions[i];
    }
    cert.directions.push_back(std::move(g));
  }
  return cert;
}

MinimizeResult Minimize(const MPInstance& inst, const MinimizeOptions& options) {
  inst.Validate();
  options.pipeline.Validate();
  const EPInstance ep = ReduceToEP(inst);
  MinimizeResult result;

  const std::vector<Point> baseline_grid =
      StageGrid(inst.K, options.baseline_radius, inst.grid_resolution, inst.norm);
  Require(!baseline_grid.empty(), ErrorCode::kEmptyGrid, "no grid point of K within the baseline radius");
  const std::vector<Point> dirs = RecessionDirections(inst.K, options.pipeline.direction_count,
                                                      options.pipeline.seed, baseline_grid.front());
  if (!dirs.empty()) {
    result.growth = CheckGrowth(inst, dirs, baseline_grid, options.pipeline.schedule,
                                options.pipeline.certificate_tolerance);
  } else {
    // Bounded K: K^inf \ {0} is empty and the growth condition holds vacuously.
    result.growth.certified = true;
    result.growth.grid_inf = ExtendedReal::PosInf();
    for (const auto& x : baseline_grid) result.growth.grid_inf = Min(result.growth.grid_inf, inst.f.Evaluate(x));
    result.growth.baseline = result.growth.grid_inf;
    result.growth.margin = ExtendedReal::PosInf();
  }

  const bool bounded_below = inst.f.traits().bounded_below;
  result.supported = result.growth.certified && bounded_below;
  result.hypotheses = {
      {"growth f^sg(u) > f^sg(0) on sampled recession directions",
       result.growth.certified ? "checked" : "failed",
       dirs.empty() ? "K has no sampled recession direction" : std::to_string(dirs.size()) + " directions"},
      {"f bounded below", bounded_below ? "declared" : "undeclared", "annotation on the objective"},
      {"transfer lower continuity of f on each K_n", "unverifiable",
       "neighbourhood condition; not decidable from finitely many evaluations"},
      {"minimizing-sequence condition on the truncations", "automatic",
       "finite-dimensional space with the norm topology"},
  };

  result.pipeline = ExistencePipeline(ep, options.pipeline);
  const auto& last = result.pipeline.trace.stages.back();
  if (const auto* sol = std::get_if<Solution>(&result.pipeline.verdict)) {
    result.argmin_sample = sol->sample;
  } else {
    result.argmin_sample = last.solutions;
  }
  result.min_value = ExtendedReal::PosInf();
  for (const auto& x : result.argmin_sample) result.min_value = Min(result.min_value, inst.f.Evaluate(x));

  if (options.oracle_cross_check) {
    for (const auto& stage : result.pipeline.trace.stages) {
      const FeasibleSet region = inst.K.Truncate(stage.n, inst.norm);
      const std::vector<double> lo(inst.f.dim(), -stage.n);
      const std::vector<double> hi(inst.f.dim(), stage.n);
      const auto reference =
          oracle::GridArgminOracle(inst.f, lo, hi, inst.grid_resolution, &region, inst.eps_value);
      StageCrossCheck check;
      check.n = stage.n;
      check.solver_count = stage.solutions.size();
      check.oracle_count = reference.points.size();
      check.agree = reference.points == stage.solutions;
      result.cross_checks.push_back(check);
    }
  }
  return result;
}

}  // namespace asymp
