#include "asymp/ep_solver.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>

#include "asymp/cones.hpp"
#include "asymp/error.hpp"
#include "asymp/sampling.hpp"

namespace asymp {

void EPInstance::Validate() const {
  Require(eps_solution >= 0, ErrorCode::kInvalidArgument, "eps_solution must be non-negative");
  Require(std::isfinite(grid_resolution) && grid_resolution > 0, ErrorCode::kInvalidArgument,
          "grid_resolution must be positive");
}

std::string ToString(CertificateMethod method) {
  return method == CertificateMethod::kDirectSigmaG ? "direct_sigma_g" : "classic_sufficient";
}

namespace {

std::vector<Point> Select(const std::vector<Point>& grid, const std::vector<char>& keep) {
  std::vector<Point> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (keep[i]) out.push_back(grid[i]);
  }
  return out;
}

template <typename Body>
void ParallelFor(std::size_t count, Body&& body) {
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(count);
#pragma omp parallel for schedule(dynamic, 16)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(asymp_solver_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::optional<std::vector<Point>> SolveDifference(const FunctionModel& f, const std::vector<Point>& grid,
                                                  double eps) {
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const ExtendedReal v = f(grid[i].coords());
    if (!v.is_finite()) return std::nullopt;  // the generic scan raises the proper error
    values[i] = v.value();
  }
  const double lowest = *std::min_element(values.begin(), values.end());
  std::vector<char> keep(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) keep[i] = (lowest - values[i]) >= -eps ? 1 : 0;
  return Select(grid, keep);
}

}  // namespace

std::vector<Point> SolveOnGrid(const BifunctionModel& psi, const std::vector<Point>& grid, double eps) {
  for (const auto& p : grid) RequireDim(psi.dim(), p.dim(), "grid point");
  if (grid.empty()) return {};

  if (const auto* c = std::get_if<ConstantBifunction>(&psi.form())) {
    return c->value >= -eps ? grid : std::vector<Point>{};
  }
  if (std::holds_alternative<YOnlyBifunction>(psi.form())) {
    double lowest = psi.Evaluate(grid.front(), grid.front());
    for (const auto& y : grid) lowest = std::min(lowest, psi.Evaluate(grid.front(), y));
    return lowest >= -eps ? grid : std::vector<Point>{};
  }
  if (const auto* d = std::get_if<DifferenceBifunction>(&psi.form())) {
    if (auto fast = SolveDifference(d->f, grid, eps)) return std::move(*fast);
  }

  std::vector<char> keep(grid.size(), 0);
  ParallelFor(grid.size(), [&](std::size_t i) {
    for (const auto& y : grid) {
      if (psi.Evaluate(grid[i], y) < -eps) return;
    }
    keep[i] = 1;
  });
  return Select(grid, keep);
}

std::vector<Point> SolveTruncated(const EPInstance& inst, double n) {
  inst.Validate();
  const std::vector<Point> grid = StageGrid(inst.K(), n, inst.grid_resolution, inst.norm);
  if (grid.empty()) {
    std::ostringstream msg;
    msg << "no grid point of spacing " << inst.grid_resolution << " lies in K_" << n;
    Fail(ErrorCode::kEmptyGrid, msg.str());
  }
  return SolveOnGrid(inst.psi, grid, inst.eps_solution);
}

namespace {

RECertificate CheckRE(const EPInstance& inst, const std::vector<Point>& directions,
                      const std::vector<Point>& y_sample, const LiminfSchedule& schedule, double tolerance,
                      CertificateMethod method) {
  Require(!directions.empty(), ErrorCode::kEmptySample, "certificate needs at least one direction");
  Require(!y_sample.empty(), ErrorCode::kEmptySample, "certificate needs at least one y");
  for (const auto& u : directions) {
    RequireDim(inst.psi.dim(), u.dim(), "certificate direction");
    Require(!u.is_zero(), ErrorCode::kInvalidArgument, "certificate directions must be nonzero");
  }
  for (const auto& y : y_sample) {
    RequireDim(inst.psi.dim(), y.dim(), "certificate y");
    Require(inst.K().Contains(y), ErrorCode::kBaseNotMember, "certificate y outside K");
  }
  schedule.Validate();

  std::vector<FunctionModel> sections;
  sections.reserve(y_sample.size());
  for (const auto& y : y_sample) sections.push_back(inst.psi.NegatedSection(y));

  RECertificate cert;
  cert.method = method;
  cert.tolerance = tolerance;
  cert.directions.resize(directions.size());
  ParallelFor(directions.size(), [&](std::size_t i) {
    DirectionEvidence ev;
    ev.direction = directions[i];
    ev.clearing_value = ExtendedReal::NegInf();
    ev.best_y = y_sample.front();
    for (std::size_t j = 0; j < sections.size(); ++j) {
      const AsymptoticEstimate est = method == CertificateMethod::kDirectSigmaG
                                         ? SigmaGSequential(sections[j], directions[i], schedule)
                                         : ClassicAsymptotic(sections[j], directions[i], schedule);
      if (est.value > ev.clearing_value) {
        ev.clearing_value = est.value;
        ev.best_y = y_sample[j];
      }
    }
    ev.cleared = ev.clearing_value > ExtendedReal(tolerance);
    cert.directions[i] = std::move(ev);
  });
  cert.certified = true;
  for (const auto& ev : cert.directions) {
    if (!ev.cleared) {
      cert.certified = false;
      cert.witness = ev.direction;
      break;
    }
  }
  return cert;
}

}  // namespace

RECertificate CheckREDirect(const EPInstance& inst, const std::vector<Point>& directions,
                            const std::vector<Point>& y_sample, const LiminfSchedule& schedule, double tolerance) {
  return CheckRE(inst, directions, y_sample, schedule, tolerance, CertificateMethod::kDirectSigmaG);
}

RECertificate CheckRESufficientClassic(const EPInstance& inst, const std::vector<Point>& directions,
                                       const std::vector<Point>& y_sample, const LiminfSchedule& schedule,
                                       double tolerance) {
  return CheckRE(inst, directions, y_sample, schedule, tolerance, CertificateMethod::kClassicSufficient);
}

std::vector<Point> RecessionDirections(const FeasibleSet& K, std::size_t count, std::uint64_t seed,
                                       const Point& base) {
  std::vector<Point> out;
  for (const auto& u : UnitDirections(K.dim(), count, seed)) {
    bool in_cone = false;
    if (const auto exact = ExactRecessionContains(K, u.coords())) {
      in_cone = *exact;
    } else if (K.convex() && K.closed()) {
      in_cone = RecessionMembershipConvex(K, u, base).in_cone();
    } else {
      in_cone = AsymptoticMembershipSampled(K, u, DefaultShells()).in_cone();
    }
    if (in_cone) out.push_back(u);
  }
  return out;
}

std::vector<Point> StridedSample(const std::vector<Point>& points, std::size_t max_count) {
  if (points.size() <= max_count) return points;
  std::vector<Point> out;
  out.reserve(max_count);
  for (std::size_t k = 0; k < max_count; ++k) out.push_back(points[k * points.size() / max_count]);
  return out;
}

void PipelineOptions::Validate() const {
  Require(!stages.empty(), ErrorCode::kEmptySchedule, "pipeline needs at least one stage");
  for (std::size_t i = 0; i < stages.size(); ++i) {
    Require(std::isfinite(stages[i]) && stages[i] > 0, ErrorCode::kInvalidArgument, "stage radii must be positive");
    if (i > 0) Require(stages[i] > stages[i - 1], ErrorCode::kInvalidArgument, "stages must be increasing");
  }
  Require(escape_ratio > 0 && escape_ratio < 1, ErrorCode::kInvalidArgument, "escape_ratio must lie in (0, 1)");
  Require(stabilization_window >= 2, ErrorCode::kInvalidArgument, "stabilization window must be at least 2");
  Require(y_sample_max >= 1, ErrorCode::kInvalidArgument, "y sample size must be at least 1");
  schedule.Validate();
}

SolutionRecessionReport SolutionSetRecession(const std::vector<Point>& sample, double stage_radius,
                                             double escape_ratio, Norm norm) {
  Require(!sample.empty(), ErrorCode::kEmptySample, "solution set sample is empty");
  Require(stage_radius > 0, ErrorCode::kInvalidArgument, "stage radius must be positive");
  SolutionRecessionReport r;
  r.sample_size = sample.size();
  r.stage_radius = stage_radius;
  for (const auto& x : sample) {
    const double len = x.norm(norm);
    r.max_norm = std::max(r.max_norm, len);
    if (len > escape_ratio * stage_radius) r.flagged_directions.push_back(x * (1.0 / x.norm(Norm())));
  }
  r.trivial = r.flagged_directions.empty();
  return r;
}

namespace {

bool Stabilized(const std::vector<StageRecord>& stages, std::size_t window, double h) {
  if (stages.size() < window) return false;
  for (std::size_t i = stages.size() - window; i < stages.size(); ++i) {
    if (stages[i].escaped) return false;
    if (i > stages.size() - window &&
        (stages[i].representative - stages[i - 1].representative).norm(Norm()) > h * (1.0 + 1e-12)) {
      return false;
    }
  }
  return true;
}

}  // namespace

PipelineResult ExistencePipeline(const EPInstance& inst, const PipelineOptions& options) {
  inst.Validate();
  options.Validate();
  const BifunctionModel& psi = inst.psi;
  const double h = inst.grid_resolution;

  PipelineResult result{Inconclusive{"stage budget exhausted before representatives stabilized"}, {}, {}, {}, {}};
  result.trace.k_sigma = RecognizeKSigma(psi);

  std::vector<double> stages = options.stages;
  std::size_t extra = 0;
  std::vector<Point> grid;
  bool decided = false;

  auto certificate_inputs = [&](const std::vector<Point>& stage_grid) {
    const std::vector<Point> dirs = RecessionDirections(inst.K(), options.direction_count, options.seed,
                                                        stage_grid.front());
    return std::make_pair(dirs, StridedSample(stage_grid, options.y_sample_max));
  };

  for (std::size_t i = 0; i < stages.size() && !decided; ++i) {
    const double n = stages[i];
    grid = StageGrid(inst.K(), n, h, inst.norm);
    if (grid.empty()) {
      std::ostringstream msg;
      msg << "stage n = " << n << ": no grid point of spacing " << h << " lies in K_n";
      Fail(ErrorCode::kEmptyGrid, msg.str());
    }
    StageRecord rec;
    rec.n = n;
    rec.grid_size = grid.size();
    rec.solutions = SolveOnGrid(psi, grid, inst.eps_solution);
    if (rec.solutions.empty()) {
      std::ostringstream msg;
      msg << "stage n = " << n << ": S(psi, K_n) has no grid point (" << grid.size()
          << " candidates); the nonempty-truncation hypothesis fails numerically";
      Fail(ErrorCode::kEmptyStageSolution, msg.str());
    }
    rec.representative = rec.solutions.front();
    rec.representative_norm = rec.representative.norm(inst.norm);
    rec.escaped = rec.representative_norm > options.escape_ratio * n;
    result.trace.stages.push_back(rec);
    const auto& recs = result.trace.stages;

    if (Stabilized(recs, options.stabilization_window, h)) {
      Solution sol;
      sol.point = rec.representative;
      sol.verification_min = psi.Evaluate(sol.point, grid.front());
      for (const auto& y : grid) sol.verification_min = std::min(sol.verification_min, psi.Evaluate(sol.point, y));
      sol.sample = rec.solutions;
      sol.stage = n;
      result.verdict = std::move(sol);
      decided = true;
      break;
    }

    if (recs.size() >= 2 && recs[recs.size() - 1].escaped && recs[recs.size() - 2].escaped) {
      result.trace.escape = true;
      const auto [dirs, ys] = certificate_inputs(grid);
      if (dirs.empty()) {
        // K is bounded as far as the probes see; escape cannot continue.
        continue;
      }
      result.direct = CheckREDirect(inst, dirs, ys, options.schedule, options.certificate_tolerance);
      if (!result.direct->certified) {
        result.verdict = CertificateFailed{*result.direct->witness, n};
        decided = true;
        break;
      }
      if (i + 1 == stages.size() && extra < options.max_extra_stages) {
        stages.push_back(2.0 * stages.back());
        ++extra;
      }
    }
  }

  const auto [dirs, ys] = certificate_inputs(grid);
  if (!dirs.empty()) {
    result.direct = CheckREDirect(inst, dirs, ys, options.schedule, options.certificate_tolerance);
    result.classic = CheckRESufficientClassic(inst, dirs, ys, options.schedule, options.certificate_tolerance);
  } else {
    // No recession direction of K: both certificates hold vacuously.
    result.direct = RECertificate{CertificateMethod::kDirectSigmaG, {}, true, std::nullopt, options.certificate_tolerance};
    result.classic =
        RECertificate{CertificateMethod::kClassicSufficient, {}, true, std::nullopt, options.certificate_tolerance};
  }
  const auto& last = result.trace.stages.back();
  result.recession = SolutionSetRecession(last.solutions, last.n, options.escape_ratio, inst.norm);
  return result;
}

}  // namespace asymp
