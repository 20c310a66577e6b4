#include "asymp/io/report.hpp"

#include <chrono>
#include <cmath>

#include "asymp/asymptotic.hpp"
#include "asymp/bifunction_checks.hpp"
#include "asymp/cones.hpp"
#include "asymp/detail/overloaded.hpp"
#include "asymp/ep_solver.hpp"
#include "asymp/error.hpp"
#include "asymp/minimizer.hpp"
#include "asymp/sampling.hpp"

namespace asymp::io {

namespace {

using nlohmann::json;

json Num(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

json Ext(const ExtendedReal& v) { return v.is_finite() ? json(v.value()) : json(v.ToString()); }

json Vec(const Point& p) {
  json a = json::array();
  for (std::size_t i = 0; i < p.dim(); ++i) a.push_back(Num(p[i]));
  return a;
}

json Rows(const std::vector<Point>& points) {
  json a = json::array();
  for (const auto& p : points) a.push_back(Vec(p));
  return a;
}

json OptVec(const std::optional<Point>& p) { return p ? Vec(*p) : json(nullptr); }

std::string CsvHeader(std::size_t dim, const std::vector<std::string>& extra) {
  std::string s;
  for (std::size_t i = 0; i < dim; ++i) s += (i ? "," : "") + std::string("x") + std::to_string(i + 1);
  for (const auto& e : extra) s += "," + e;
  return s + "\n";
}

std::string CsvCell(double v) { return FormatNumber(v); }

std::string CsvPoints(std::size_t dim, const std::vector<Point>& points) {
  std::string s = CsvHeader(dim, {});
  for (const auto& p : points) {
    for (std::size_t i = 0; i < p.dim(); ++i) s += (i ? "," : "") + CsvCell(p[i]);
    s += "\n";
  }
  return s;
}

std::string ToString(EstimateMethod m) {
  switch (m) {
    case EstimateMethod::kSequentialLiminf: return "sequential_liminf";
    case EstimateMethod::kSublevelRecession: return "sublevel_recession";
    case EstimateMethod::kAnalyticClosedForm: return "analytic_closed_form";
  }
  return "?";
}

json Estimate(const AsymptoticEstimate& e, bool with_trace) {
  json j = {{"direction", Vec(e.direction)},
            {"value", Ext(e.value)},
            {"method", ToString(e.method)},
            {"confidence", e.confidence == Confidence::kExact ? "exact" : "upper_bound_estimate"}};
  if (with_trace) {
    json t = json::array();
    for (const auto& s : e.trace) t.push_back({{"t", Num(s.t)}, {"value", Ext(s.value)}});
    j["trace"] = t;
  }
  return j;
}

json ErrorJson(const Error& e) { return {{"code", std::string(ToString(e.code()))}, {"message", e.what()}}; }

json Hypothesis(const std::string& name, const std::string& status, const std::string& detail) {
  return {{"name", name}, {"status", status}, {"detail", detail}};
}

std::string Declared(bool b) { return b ? "declared" : "undeclared"; }

json FunctionLedger(const FunctionModel& f) {
  const auto& t = f.traits();
  json a = json::array();
  a.push_back(Hypothesis("quasi_convex", Declared(t.quasi_convex), "annotation, not verified"));
  a.push_back(Hypothesis("lsc", Declared(t.lsc), "annotation, not verified"));
  a.push_back(Hypothesis("bounded_below", Declared(t.bounded_below), "annotation, not verified"));
  a.push_back(Hypothesis("radial", t.radial ? "checked" : "undeclared",
                         t.radial ? "spot-checked under signed coordinate permutations" : ""));
  return a;
}

json Certificate(const RECertificate& c) {
  json dirs = json::array();
  for (const auto& d : c.directions) {
    dirs.push_back({{"direction", Vec(d.direction)},
                    {"clearing_value", Ext(d.clearing_value)},
                    {"best_y", Vec(d.best_y)},
                    {"cleared", d.cleared}});
  }
  return {{"method", ToString(c.method)},
          {"certified", c.certified},
          {"witness", OptVec(c.witness)},
          {"tolerance", Num(c.tolerance)},
          {"directions", dirs}};
}

json Recession(const SolutionRecessionReport& r) {
  return {{"sample_size", r.sample_size},   {"max_norm", Num(r.max_norm)},
          {"stage_radius", Num(r.stage_radius)}, {"trivial", r.trivial},
          {"flagged_directions", Rows(r.flagged_directions)}, {"budget_limited", r.budget_limited}};
}

struct PipelineJson {
  json value;
  int exit_code = kExitSuccess;
  std::vector<Point> sample;
};

PipelineJson Pipeline(const PipelineResult& r) {
  PipelineJson out;
  json stages = json::array();
  for (const auto& s : r.trace.stages) {
    stages.push_back({{"n", Num(s.n)},
                      {"grid_size", s.grid_size},
                      {"solution_count", s.solutions.size()},
                      {"representative", Vec(s.representative)},
                      {"representative_norm", Num(s.representative_norm)},
                      {"escaped", s.escaped}});
  }
  json verdict = std::visit(
      detail::Overloaded{
          [&](const Solution& s) -> json {
            out.sample = s.sample;
            return {{"kind", "solution"},
                    {"point", Vec(s.point)},
                    {"verification_min", Num(s.verification_min)},
                    {"stage", Num(s.stage)},
                    {"sample", Rows(s.sample)}};
          },
          [&](const CertificateFailed& f) -> json {
            return {{"kind", "certificate_failed"}, {"witness", Vec(f.witness)}, {"stage", Num(f.stage)}};
          },
          [&](const Inconclusive& i) -> json {
            out.exit_code = kExitInconclusive;
            return {{"kind", "inconclusive"}, {"reason", i.reason}};
          },
      },
      r.verdict);
  out.value = {{"verdict", verdict},
               {"stages", stages},
               {"escape", r.trace.escape},
               {"k_sigma",
                {{"kind", ToString(r.trace.k_sigma.kind)},
                 {"structural_class", r.trace.k_sigma.structural_class},
                 {"reason", r.trace.k_sigma.reason}}},
               {"direct_certificate", r.direct ? Certificate(*r.direct) : json(nullptr)},
               {"classic_certificate", r.classic ? Certificate(*r.classic) : json(nullptr)},
               {"solution_recession", r.recession ? Recession(*r.recession) : json(nullptr)}};
  return out;
}

LiminfSchedule Schedule(std::uint64_t seed) {
  LiminfSchedule s = LiminfSchedule::Default();
  s.seed = seed;
  return s;
}

PipelineOptions Options(const TaskSpec& task, std::uint64_t seed, std::optional<std::size_t> budget,
                        std::optional<double> tolerance) {
  PipelineOptions o;
  if (!task.stages.empty()) o.stages = task.stages;
  if (task.escape_ratio) o.escape_ratio = *task.escape_ratio;
  o.direction_count = task.directions;
  o.seed = seed;
  o.schedule = Schedule(seed);
  if (tolerance) o.certificate_tolerance = *tolerance;
  if (budget) {
    const std::size_t b = std::max<std::size_t>(*budget, 1);
    if (o.stages.size() > b) o.stages.resize(b);
    o.max_extra_stages = std::min(o.max_extra_stages, b - o.stages.size());
  }
  return o;
}

class Runner {
 public:
  Runner(const Problem& p, const RunOverrides& o)
      : p_(p),
        task_(p.task),
        seed_(o.seed.value_or(p.task.seed)),
        budget_(o.budget ? o.budget : (p.task.budget ? std::optional<std::size_t>(p.task.budget) : std::nullopt)),
        tolerance_(o.tolerance ? o.tolerance : p.task.tolerance) {}

  RunOutcome Run() {
    RunOutcome out;
    json result;
    try {
      switch (task_.kind) {
        case TaskKind::kAnalyze: result = Analyze(out); break;
        case TaskKind::kCone: result = Cone(out); break;
        case TaskKind::kSolveEP: result = SolveEP(out); break;
        case TaskKind::kMinimize: result = MinimizeTask(out); break;
        case TaskKind::kCheck: result = Check(out); break;
      }
    } catch (const Error& e) {
      result = {{"error", ErrorJson(e)}, {"task", ToString(task_.kind)}};
      const bool hypothesis = e.code() == ErrorCode::kEmptyStageSolution || e.code() == ErrorCode::kMissingHypothesis;
      out.exit_code = hypothesis ? kExitHypothesisViolation : kExitFailure;
      out.table.clear();
    }
    json params = json::object();
    for (const auto& [k, v] : task_.params) params[k] = v;
    json notes = json::array();
    for (const auto& n : p_.notes) notes.push_back(n);
    out.report = {{"format", "asymp-report 1"},
                  {"problem", {{"name", p_.name}, {"dimension", p_.dim}, {"norm", p_.norm_text}}},
                  {"task", ToString(task_.kind)},
                  {"config",
                   {{"params", params},
                    {"seed", seed_},
                    {"budget", budget_ ? json(*budget_) : json(nullptr)},
                    {"tolerance", tolerance_ ? Num(*tolerance_) : json(nullptr)}}},
                  {"seed", seed_},
                  {"hypotheses", ledger_},
                  {"notes", notes},
                  {"result", result},
                  {"exit_code", out.exit_code}};
    return out;
  }

 private:
  const FunctionModel& Function() const { return *p_.FindFunction(task_.function)->model; }
  const BifunctionModel& Bifunction() const { return *p_.FindBifunction(task_.bifunction)->model; }
  double Tolerance(double fallback) const { return tolerance_.value_or(fallback); }

  void Ledger(json entries) {
    for (auto& e : entries) ledger_.push_back(std::move(e));
  }

  json Analyze(RunOutcome& out) {
    const FunctionModel& f = Function();
    Ledger(FunctionLedger(f));
    const auto dirs = UnitDirections(p_.dim, task_.directions, seed_);
    const auto schedule = Schedule(seed_);
    const auto sigma = SigmaGSequentialBatch(f, dirs, schedule);

    json rows = json::array();
    std::vector<AsymptoticEstimate> classic;
    for (const auto& u : dirs) classic.push_back(ClassicAsymptotic(f, u, schedule));

    std::optional<LevelGrid> levels;
    if (task_.levels) levels = LevelGrid::Uniform((*task_.levels)[0], (*task_.levels)[1], (*task_.levels)[2]);
    json sublevel_error = nullptr;
    std::vector<std::optional<AsymptoticEstimate>> sublevel(dirs.size());
    try {
      SublevelOptions opts;
      const LevelGrid grid = levels ? *levels : LevelGrid::FromSamples(f, opts.BaseCandidates(p_.dim));
      for (std::size_t i = 0; i < dirs.size(); ++i) sublevel[i] = SigmaGSublevel(f, dirs[i], grid, opts);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kMissingHypothesis) throw;
      sublevel_error = ErrorJson(e);
    }

    std::string csv = CsvHeader(p_.dim, {"sigma_g", "classic", "sigma_g_sublevel"});
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      json row = {{"sigma_g", Estimate(sigma[i], true)}, {"classic", Estimate(classic[i], false)}};
      row["sigma_g_sublevel"] = sublevel[i] ? Estimate(*sublevel[i], false) : json(nullptr);
      rows.push_back(row);
      for (std::size_t k = 0; k < p_.dim; ++k) csv += (k ? "," : "") + CsvCell(dirs[i][k]);
      csv += "," + sigma[i].value.ToString() + "," + classic[i].value.ToString() + "," +
             (sublevel[i] ? sublevel[i]->value.ToString() : std::string()) + "\n";
    }
    out.table = csv;

    const auto grid = StageGrid(f.domain(), task_.baseline_radius, task_.resolution.value_or(0.1), p_.norm);
    json identity = nullptr;
    if (!grid.empty()) {
      const auto r = InfIdentityCheck(f, grid, dirs, schedule);
      identity = {{"grid_size", grid.size()},
                  {"grid_inf", Ext(r.grid_inf)},
                  {"grid_argmin", Vec(r.grid_argmin)},
                  {"sigma_at_zero", Ext(r.sigma_at_zero)},
                  {"min_over_directions", Ext(r.min_over_directions)},
                  {"max_gap", Ext(r.max_gap)}};
    }

    json bounded;
    try {
      const auto b = BoundednessDiagnostic(f, dirs, levels);
      bounded = {{"all_finite", b.all_finite},
                 {"verdict", b.all_finite ? "all_finite" : "found_infinite"},
                 {"witness", OptVec(b.witness)}};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kMissingHypothesis) throw;
      bounded = {{"verdict", "rejected"}, {"error", ErrorJson(e)}};
    }
    return {{"function", task_.function},
            {"description", f.description()},
            {"directions", rows},
            {"sublevel_route_error", sublevel_error},
            {"inf_identity", identity},
            {"boundedness", bounded}};
  }

  json Cone(RunOutcome& out) {
    const FeasibleSet& set = p_.FindSet(task_.set)->set;
    const auto dirs = task_.direction ? std::vector<Point>{*task_.direction} : UnitDirections(p_.dim, task_.directions, seed_);
    std::optional<Point> base = task_.base;
    if (base && !set.Contains(*base)) Fail(ErrorCode::kBaseNotMember, "task base point is not in set '" + task_.set + "'");
    if (!base) {
      if (set.Contains(Point::Zero(p_.dim))) {
        base = Point::Zero(p_.dim);
      } else {
        const auto grid = StageGrid(set, 8.0, 0.25, p_.norm);
        if (!grid.empty()) base = grid.front();
      }
    }
    ConeProbe probe = ConeProbe::Default();
    if (tolerance_) probe.tolerance = *tolerance_;
    ShellSearch search;
    search.seed = seed_;
    const bool ray_route = set.convex() && set.closed() && base.has_value();
    json rows = json::array();
    std::string csv = CsvHeader(p_.dim, {"in_cone"});
    for (const auto& u : dirs) {
      json row = {{"direction", Vec(u)}};
      bool in = false;
      if (ray_route) {
        const auto r = RecessionMembershipConvex(set, u, *base, probe);
        in = r.in_cone();
        row["route"] = r.exact ? "exact" : "ray";
        row["witness_t"] = r.witness_t ? Num(*r.witness_t) : json(nullptr);
      } else if (const auto exact = ExactRecessionContains(set, u.coords(), probe.tolerance)) {
        in = *exact;
        row["route"] = "exact";
      } else {
        const auto r = AsymptoticMembershipSampled(set, u, DefaultShells(), search);
        in = r.in_cone();
        row["route"] = "sampled_shells";
        row["failed_shell_t"] = r.failed_shell_t ? Num(*r.failed_shell_t) : json(nullptr);
      }
      row["in_cone"] = in;
      rows.push_back(row);
      for (std::size_t k = 0; k < p_.dim; ++k) csv += (k ? "," : "") + CsvCell(u[k]);
      csv += std::string(",") + (in ? "1" : "0") + "\n";
    }
    out.table = csv;
    Ledger(json::array({Hypothesis("closed_convex", set.convex() && set.closed() ? "declared" : "undeclared",
                                   set.convex() && set.closed() ? "ray characterization used"
                                                                : "sampled asymptotic shells used")}));
    return {{"set", task_.set},
            {"description", set.Describe()},
            {"base", OptVec(base)},
            {"directions", rows}};
  }

  json EPLedger(const BifunctionModel& psi, const PipelineResult& r) {
    const auto& t = psi.traits();
    json a = json::array();
    a.push_back(Hypothesis("diag_nonnegative", Declared(t.diag_nonnegative), "annotation, not verified"));
    a.push_back(Hypothesis("y_quasi_convex", Declared(t.y_quasi_convex), "annotation, not verified"));
    a.push_back(Hypothesis("x_quasi_concave", Declared(t.x_quasi_concave), "annotation, not verified"));
    a.push_back(Hypothesis("transfer_usc", t.transfer_usc ? "declared" : "unverifiable",
                           "annotation only; cannot be certified from samples"));
    a.push_back(Hypothesis("k_sigma", ToString(r.trace.k_sigma.kind), r.trace.k_sigma.reason));
    if (r.direct) {
      a.push_back(Hypothesis("recession_certificate", r.direct->certified ? "checked" : "failed",
                             "direct sigma_g method on sampled directions"));
    }
    return a;
  }

  json SolveEP(RunOutcome& out) {
    const BifunctionModel& psi = Bifunction();
    EPInstance inst{.psi = psi, .norm = p_.norm};
    if (task_.eps) inst.eps_solution = *task_.eps;
    if (task_.resolution) inst.grid_resolution = *task_.resolution;
    inst.norm = p_.norm;
    const auto r = ExistencePipeline(inst, Options(task_, seed_, budget_, tolerance_));
    Ledger(EPLedger(psi, r));
    auto pj = Pipeline(r);
    out.exit_code = pj.exit_code;
    out.table = CsvPoints(p_.dim, pj.sample);
    return {{"bifunction", task_.bifunction}, {"description", psi.description()}, {"pipeline", pj.value}};
  }

  json MinimizeTask(RunOutcome& out) {
    const FunctionModel& f = Function();
    const FeasibleSet K = task_.set.empty() ? f.domain() : p_.FindSet(task_.set)->set;
    MPInstance inst{.f = f, .K = K, .norm = p_.norm};
    if (task_.resolution) inst.grid_resolution = *task_.resolution;
    if (task_.eps) inst.eps_value = *task_.eps;
    inst.norm = p_.norm;
    MinimizeOptions opts;
    opts.pipeline = Options(task_, seed_, budget_, tolerance_);
    opts.baseline_radius = task_.baseline_radius;
    const auto r = Minimize(inst, opts);
    for (const auto& h : r.hypotheses) ledger_.push_back(Hypothesis(h.name, h.status, h.detail));

    json growth_dirs = json::array();
    for (const auto& g : r.growth.directions) {
      growth_dirs.push_back({{"direction", Vec(g.direction)}, {"value", Ext(g.estimate.value)}, {"exceeds", g.exceeds}});
    }
    json cross = json::array();
    for (const auto& c : r.cross_checks) {
      cross.push_back({{"n", Num(c.n)}, {"solver_count", c.solver_count}, {"oracle_count", c.oracle_count},
                       {"agree", c.agree}});
    }
    auto pj = Pipeline(r.pipeline);
    out.exit_code = pj.exit_code;
    out.table = CsvPoints(p_.dim, r.argmin_sample);
    return {{"function", task_.function},
            {"description", f.description()},
            {"growth",
             {{"baseline", Ext(r.growth.baseline)},
              {"grid_inf", Ext(r.growth.grid_inf)},
              {"margin", Ext(r.growth.margin)},
              {"certified", r.growth.certified},
              {"witness", OptVec(r.growth.witness)},
              {"tolerance", Num(r.growth.tolerance)},
              {"directions", growth_dirs}}},
            {"supported", r.supported},
            {"argmin_sample", Rows(r.argmin_sample)},
            {"min_value", Ext(r.min_value)},
            {"oracle_cross_checks", cross},
            {"pipeline", pj.value}};
  }

  json Check(RunOutcome& out) {
    const BifunctionModel& psi = Bifunction();
    SampleDesign design;
    design.points = StageGrid(psi.feasible(), task_.design_radius, task_.design_resolution, p_.norm);
    design.tuple_length_max = task_.tuple_length;
    design.subset_size_max = task_.subset_size;
    design.tolerance = Tolerance(design.tolerance);
    if (budget_) design.max_tuples = *budget_;
    design.seed = seed_;
    if (design.points.empty()) Fail(ErrorCode::kEmptySample, "design grid is empty; raise design_radius");

    std::vector<std::string> classes = task_.classes;
    if (classes.empty()) classes = {"pseudomonotone", "cyclic", "locally_dominated", "transfer_quasi_convex", "k_sigma"};
    json reports = json::array();
    bool partial = false;
    for (const auto& c : classes) {
      if (c == "k_sigma") {
        const auto k = RecognizeKSigma(psi);
        reports.push_back({{"class_name", "k_sigma"},
                           {"status", ToString(k.kind)},
                           {"structural_class", k.structural_class},
                           {"reason", k.reason}});
        continue;
      }
      json entry;
      try {
        ClassCheckReport r;
        if (c == "pseudomonotone") r = CheckPseudomonotone(psi, design);
        if (c == "cyclic") r = CheckCyclicallyAntiQuasimonotone(psi, design);
        if (c == "locally_dominated") r = CheckLocallyDominated(psi, design, design.points);
        if (c == "transfer_quasi_convex") r = CheckTransferQuasiConvexInY(psi, design);
        json values = json::array();
        for (double v : r.witness_values) values.push_back(Num(v));
        entry = {{"class_name", r.class_name}, {"status", ToString(r.status)}, {"witness", Rows(r.witness)},
                 {"witness_values", values}, {"tuples_tested", r.tuples_tested}, {"partial", r.partial}};
        partial = partial || r.partial;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNonConvexSet) throw;
        entry = {{"class_name", c}, {"status", "not_applicable"}, {"error", ErrorJson(e)}};
      }
      reports.push_back(entry);
    }
    if (partial) out.exit_code = kExitInconclusive;
    out.table = CsvPoints(p_.dim, design.points);
    const auto& t = psi.traits();
    Ledger(json::array({Hypothesis("pseudomonotone", Declared(t.pseudomonotone), "sampled checks can only refute"),
                        Hypothesis("cyclically_anti_quasimonotone", Declared(t.cyclically_anti_quasimonotone),
                                   "sampled checks can only refute"),
                        Hypothesis("transfer_usc", t.transfer_usc ? "declared" : "unverifiable",
                                   "annotation only; cannot be certified from samples")}));
    return {{"bifunction", task_.bifunction},
            {"description", psi.description()},
            {"design_size", design.points.size()},
            {"checks", reports}};
  }

  const Problem& p_;
  const TaskSpec& task_;
  std::uint64_t seed_;
  std::optional<std::size_t> budget_;
  std::optional<double> tolerance_;
  json ledger_ = json::array();
};

}  // namespace

RunOutcome RunTask(const Problem& problem, const RunOverrides& overrides) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome out = Runner(problem, overrides).Run();
  out.report["wall_clock_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

std::string RenderReport(const nlohmann::json& report) { return report.dump(2) + "\n"; }

nlohmann::json ParseFailureReport(const ParseError& error) {
  const auto& d = error.diagnostic();
  json expected = json::array();
  for (const auto& e : d.expected) expected.push_back(e);
  return {{"format", "asymp-report 1"},
          {"exit_code", kExitParseError},
          {"diagnostic",
           {{"code", d.code}, {"line", d.line}, {"column", d.column}, {"message", d.message}, {"expected", expected}}}};
}

}  // namespace asymp::io
