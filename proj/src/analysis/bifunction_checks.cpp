#include "asymp/bifunction_checks.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <random>

#include "asymp/error.hpp"
#include "asymp/sampling.hpp"

namespace asymp {

void SampleDesign::Validate(const BifunctionModel& psi) const {
  Require(tuple_length_max >= 1 && subset_size_max >= 1, ErrorCode::kInvalidArgument,
          "sample design bounds must be at least 1");
  Require(tolerance >= 0, ErrorCode::kInvalidArgument, "sample design tolerance must be non-negative");
  for (const auto& p : points) {
    RequireDim(psi.dim(), p.dim(), "design point");
    Require(psi.feasible().Contains(p), ErrorCode::kBaseNotMember,
            "design point outside " + psi.feasible().Describe());
  }
}

std::string ToString(CheckStatus status) {
  switch (status) {
    case CheckStatus::kConsistent: return "consistent_on_sample";
    case CheckStatus::kRefuted: return "refuted";
    case CheckStatus::kWitnessed: return "witnessed";
    case CheckStatus::kUnwitnessed: return "unwitnessed";
  }
  return "unknown";
}

std::string ToString(KSigmaRecognition::Kind kind) {
  switch (kind) {
    case KSigmaRecognition::Kind::kAutomatic: return "automatic";
    case KSigmaRecognition::Kind::kStructural: return "structural";
    case KSigmaRecognition::Kind::kUnknown: return "unknown";
  }
  return "unknown";
}

namespace {

// Row-major matrix of psi(p_i, q_j).
std::vector<double> PairMatrix(const BifunctionModel& psi, const std::vector<Point>& rows,
                               const std::vector<Point>& cols) {
  const std::size_t m = cols.size();
  std::vector<double> out(rows.size() * m);
  std::exception_ptr failure;
  const auto n = static_cast<std::ptrdiff_t>(rows.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      for (std::size_t j = 0; j < m; ++j) out[i * m + j] = psi.Evaluate(rows[i], cols[j]);
    } catch (...) {
#pragma omp critical(asymp_pair_matrix)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

// All index subsets of size 1..k in order of size, then lexicographic, up to `cap`.
std::vector<std::vector<std::size_t>> Subsets(std::size_t n, std::size_t k, std::size_t cap, bool& partial) {
  std::vector<std::vector<std::size_t>> out;
  partial = false;
  for (std::size_t size = 1; size <= std::min(k, n); ++size) {
    std::vector<std::size_t> idx(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    while (true) {
      if (out.size() >= cap) {
        partial = true;
        return out;
      }
      out.push_back(idx);
      std::size_t pos = size;
      while (pos > 0 && idx[pos - 1] == n - size + pos - 1) --pos;
      if (pos == 0) break;
      ++idx[pos - 1];
      for (std::size_t i = pos; i < size; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return out;
}

}  // namespace

ClassCheckReport CheckPseudomonotone(const BifunctionModel& psi, const SampleDesign& design) {
  design.Validate(psi);
  ClassCheckReport report;
  report.class_name = "pseudomonotone";
  const auto& pts = design.points;
  const std::size_t n = pts.size();
  const std::vector<double> m = PairMatrix(psi, pts, pts);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      ++report.tuples_tested;
      const double forward = m[i * n + j];
      const double backward = m[j * n + i];
      if (forward >= 0.0 && backward > design.tolerance) {
        report.status = CheckStatus::kRefuted;
        report.witness = {pts[i], pts[j]};
        report.witness_values = {forward, backward};
        return report;
      }
    }
  }
  return report;
}

namespace {

struct CycleSearch {
  const std::vector<char>& negative;  // negative[i * n + j]: psi(p_i, p_j) < -tol
  std::size_t n;
  std::size_t length;
  std::vector<std::size_t> path;
  std::size_t decided = 0;  // cycles settled, pruned subtrees included

  static std::size_t Power(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) r *= base;
    return r;
  }

  bool Extend() {
    const std::size_t last = path.back();
    if (path.size() == length) {
      ++decided;
      return negative[last * n + path.front()] != 0;
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (!negative[last * n + j]) {
        decided += Power(n, length - path.size() - 1);
        continue;
      }
      path.push_back(j);
      if (Extend()) return true;
      path.pop_back();
    }
    return false;
  }
};

}  // namespace

ClassCheckReport CheckCyclicallyAntiQuasimonotone(const BifunctionModel& psi, const SampleDesign& design) {
  design.Validate(psi);
  Require(design.tuple_length_max >= 2, ErrorCode::kInvalidArgument, "cyclic check needs tuple_length_max >= 2");
  ClassCheckReport report;
  report.class_name = "cyclically_anti_quasimonotone";
  const auto& pts = design.points;
  const std::size_t n = pts.size();
  if (n == 0) return report;
  const std::vector<double> m = PairMatrix(psi, pts, pts);
  std::vector<char> negative(n * n);
  for (std::size_t i = 0; i < n * n; ++i) negative[i] = m[i] < -design.tolerance ? 1 : 0;

  std::size_t budget = design.max_tuples;
  for (std::size_t length = 2; length <= design.tuple_length_max; ++length) {
    const double total = std::pow(static_cast<double>(n), static_cast<double>(length));
    if (length > 2 && total > static_cast<double>(budget)) {
      report.partial = true;
      break;
    }
    budget -= std::min(budget, static_cast<std::size_t>(total));

    std::vector<std::size_t> decided(n, 0);
    std::vector<std::vector<std::size_t>> found(n);
    const auto starts = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t s = 0; s < starts; ++s) {
      CycleSearch search{negative, n, length, {static_cast<std::size_t>(s)}, 0};
      if (search.Extend()) found[s] = search.path;
      decided[s] = search.decided;
    }
    for (std::size_t s = 0; s < n; ++s) {
      report.tuples_tested += decided[s];
      if (found[s].empty()) continue;
      report.status = CheckStatus::kRefuted;
      const auto& cycle = found[s];
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        report.witness.push_back(pts[cycle[i]]);
        report.witness_values.push_back(m[cycle[i] * n + cycle[(i + 1) % cycle.size()]]);
      }
      return report;
    }
  }
  return report;
}

ClassCheckReport CheckLocallyDominated(const BifunctionModel& psi, const SampleDesign& design,
                                       const std::vector<Point>& candidates) {
  design.Validate(psi);
  for (const auto& c : candidates) RequireDim(psi.dim(), c.dim(), "domination candidate");
  ClassCheckReport report;
  report.class_name = "locally_dominated";
  report.status = CheckStatus::kWitnessed;
  const auto& pts = design.points;
  const std::size_t n = pts.size();
  const std::vector<double> m = PairMatrix(psi, candidates, pts);
  const auto subsets = Subsets(n, design.subset_size_max, design.max_tuples, report.partial);
  report.tuples_tested = subsets.size();

  // best[s]: min over candidates of max_i psi(x, y_i) for subset s.
  std::vector<double> best(subsets.size(), std::numeric_limits<double>::infinity());
  const auto count = static_cast<std::ptrdiff_t>(subsets.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t s = 0; s < count; ++s) {
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      double worst = -std::numeric_limits<double>::infinity();
      for (std::size_t i : subsets[s]) worst = std::max(worst, m[c * n + i]);
      best[s] = std::min(best[s], worst);
      if (best[s] <= design.tolerance) break;
    }
  }
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    if (best[s] <= design.tolerance) continue;
    report.status = CheckStatus::kUnwitnessed;
    for (std::size_t i : subsets[s]) report.witness.push_back(pts[i]);
    report.witness_values = {best[s]};
    break;
  }
  return report;
}

namespace {

Point Combine(const std::vector<const Point*>& vertices, const std::vector<double>& weights) {
  std::vector<double> x(vertices.front()->dim(), 0.0);
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] += weights[v] * (*vertices[v])[i];
  }
  return Point(std::move(x));
}

// Vertices, pairwise midpoints, the centroid and a few seeded Dirichlet draws.
std::vector<Point> HullSamples(const std::vector<const Point*>& vertices, std::mt19937_64& rng) {
  const std::size_t k = vertices.size();
  std::vector<Point> out;
  for (const auto* v : vertices) out.push_back(*v);
  if (k == 1) return out;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a + 1; b < k; ++b) {
      std::vector<double> w(k, 0.0);
      w[a] = w[b] = 0.5;
      out.push_back(Combine(vertices, w));
    }
  }
  out.push_back(Combine(vertices, std::vector<double>(k, 1.0 / static_cast<double>(k))));
  std::exponential_distribution<double> exp1(1.0);
  for (int draw = 0; draw < 4; ++draw) {
    std::vector<double> w(k);
    double sum = 0.0;
    for (auto& wi : w) sum += (wi = exp1(rng));
    for (auto& wi : w) wi /= sum;
    out.push_back(Combine(vertices, w));
  }
  return out;
}

// Does the assignment x_i = pool[assign[i]] transfer the subset ys?
bool TransfersSubset(const BifunctionModel& psi, const std::vector<const Point*>& ys,
                     const std::vector<const Point*>& xs, double tol, std::uint64_t seed) {
  const std::size_t k = ys.size();
  auto rng = StreamRng(seed, 0);
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    std::vector<const Point*> vertices;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (std::size_t{1} << i)) {
        vertices.push_back(xs[i]);
        members.push_back(i);
      }
    }
    for (const auto& x : HullSamples(vertices, rng)) {
      double best = -std::numeric_limits<double>::infinity();
      for (std::size_t i : members) best = std::max(best, psi.Evaluate(x, *ys[i]));
      if (best < -tol) return false;
    }
  }
  return true;
}

}  // namespace

ClassCheckReport CheckTransferQuasiConvexInY(const BifunctionModel& psi, const SampleDesign& design) {
  design.Validate(psi);
  Require(psi.feasible().convex(), ErrorCode::kNonConvexSet,
          "transfer check samples convex hulls and needs a convex feasible set, not " + psi.feasible().Describe());
  ClassCheckReport report;
  report.class_name = "transfer_quasi_convex_in_y";
  report.status = CheckStatus::kWitnessed;
  const auto& pts = design.points;
  const auto subsets = Subsets(pts.size(), design.subset_size_max, design.max_tuples, report.partial);
  constexpr std::size_t kAssignmentBudget = 4096;

  for (std::size_t s = 0; s < subsets.size(); ++s) {
    ++report.tuples_tested;
    const auto& idx = subsets[s];
    const std::size_t k = idx.size();
    std::vector<const Point*> ys;
    for (std::size_t i : idx) ys.push_back(&pts[i]);
    const std::uint64_t seed = design.seed + s;

    bool ok = TransfersSubset(psi, ys, ys, design.tolerance, seed);
    for (std::size_t p = 0; !ok && p < pts.size(); ++p) {
      ok = TransfersSubset(psi, ys, std::vector<const Point*>(k, &pts[p]), design.tolerance, seed);
    }
    const double assignments = std::pow(static_cast<double>(pts.size()), static_cast<double>(k));
    if (!ok && assignments <= static_cast<double>(kAssignmentBudget)) {
      std::vector<std::size_t> a(k, 0);
      while (!ok) {
        std::vector<const Point*> xs;
        for (std::size_t i : a) xs.push_back(&pts[i]);
        ok = TransfersSubset(psi, ys, xs, design.tolerance, seed);
        std::size_t pos = 0;
        while (pos < k && ++a[pos] == pts.size()) a[pos++] = 0;
        if (pos == k) break;
      }
    }
    if (!ok) {
      report.status = CheckStatus::kUnwitnessed;
      for (const auto* y : ys) report.witness.push_back(*y);
      return report;
    }
  }
  return report;
}

KSigmaRecognition RecognizeKSigma(const BifunctionModel& psi) {
  KSigmaRecognition r;
  r.kind = KSigmaRecognition::Kind::kAutomatic;
  r.reason = "finite-dimensional space with the norm topology: every bifunction satisfies the condition";
  if (const auto* c = std::get_if<ConstantBifunction>(&psi.form()); c && c->value >= 0.0) {
    r.kind = KSigmaRecognition::Kind::kStructural;
    r.structural_class = "constant";
    r.reason += "; constant psi = r >= 0 satisfies it in any space";
  } else if (std::holds_alternative<DifferenceBifunction>(psi.form())) {
    r.kind = KSigmaRecognition::Kind::kStructural;
    r.structural_class = "difference";
    r.reason += "; psi(x, y) = f(y) - f(x) inherits it from f";
  }
  return r;
}

}  // namespace asymp
