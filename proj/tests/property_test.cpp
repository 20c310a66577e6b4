// Randomized invariants over seeded model families.
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "asymp/asymptotic.hpp"
#include "asymp/bifunction_checks.hpp"
#include "asymp/cones.hpp"
#include "asymp/ep_solver.hpp"
#include "asymp/oracle/oracle.hpp"
#include "families.hpp"
#include "models.hpp"

using namespace asymp;

namespace {

FeasibleSet RandomPolyhedron(std::mt19937_64& rng, std::size_t dim, std::vector<Halfspace>* out = nullptr) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<Halfspace> hs(1 + rng() % 3);
  for (auto& h : hs) {
    h.normal.resize(dim);
    for (auto& c : h.normal) c = unit(rng);
    h.offset = 1.0 + std::abs(unit(rng));  // the origin is interior
  }
  if (out) *out = hs;
  return FeasibleSet::Polyhedron(hs);
}

}  // namespace

TEST_CASE("extended reals: addition is monotone and the order total") {
  auto rng = StreamRng(1, 0);
  std::uniform_real_distribution<double> v(-1e6, 1e6);
  const std::vector<ExtendedReal> specials{ExtendedReal::NegInf(), ExtendedReal::PosInf(), ExtendedReal(0.0)};
  for (int i = 0; i < 2000; ++i) {
    auto pick = [&] { return rng() % 5 == 0 ? specials[rng() % 3] : ExtendedReal(v(rng)); };
    ExtendedReal a = pick(), b = pick();
    const ExtendedReal c = pick();
    if (b < a) std::swap(a, b);
    CHECK((a < b || a == b || b < a));
    const bool undefined = (!a.is_finite() || !b.is_finite() || !c.is_finite()) &&
                           ((a.is_pos_inf() || b.is_pos_inf() || c.is_pos_inf()) &&
                            (a.is_neg_inf() || b.is_neg_inf() || c.is_neg_inf()));
    if (undefined) continue;
    CHECK(a + c <= b + c);
    CHECK(Min(a, c) <= Min(b, c));
  }
}

TEST_CASE("recession cones are cones and translation invariant") {
  auto rng = StreamRng(2, 0);
  for (int model = 0; model < 40; ++model) {
    const std::size_t dim = 1 + model % 3;
    std::vector<Halfspace> hs;
    const FeasibleSet k = RandomPolyhedron(rng, dim, &hs);
    std::vector<double> shift(dim);
    for (auto& s : shift) s = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    auto moved = hs;
    for (auto& h : moved) h.offset += Dot(h.normal, shift);
    const FeasibleSet k_moved = FeasibleSet::Polyhedron(moved);
    for (const auto& u : UnitDirections(dim, 64, 3 + model)) {
      const bool in = *ExactRecessionContains(k, u.coords());
      for (double s : {0.5, 2.0, 10.0}) CHECK(*ExactRecessionContains(k, (u * s).coords()) == in);
      CHECK(*ExactRecessionContains(k_moved, u.coords()) == in);
      const auto ray = RecessionMembershipConvex(k_moved, u, Point(shift));
      CHECK(ray.in_cone() == in);
    }
  }
}

TEST_CASE("bounded sets recede in no direction") {
  auto rng = StreamRng(4, 0);
  for (int model = 0; model < 20; ++model) {
    const std::size_t dim = 1 + model % 3;
    std::vector<double> lo(dim), hi(dim), c(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      lo[i] = std::uniform_real_distribution<double>(-5.0, 0.0)(rng);
      hi[i] = lo[i] + std::uniform_real_distribution<double>(0.0, 5.0)(rng);
      c[i] = (lo[i] + hi[i]) / 2;
    }
    const auto box = FeasibleSet::Box(lo, hi);
    const auto ball = FeasibleSet::Ball(Point(c), 1.5);
    for (const auto& u : UnitDirections(dim, 32, model)) {
      CHECK_FALSE(RecessionMembershipConvex(box, u, Point(c)).in_cone());
      CHECK_FALSE(RecessionMembershipConvex(ball, u, Point(c)).in_cone());
      CHECK_FALSE(AsymptoticMembershipSampled(box, u, DefaultShells()).in_cone());
    }
  }
}

TEST_CASE("sigma_g preserves the pointwise order") {
  const auto suite = testing::IdentitySuite(20, 500);
  for (const auto& m : suite) {
    const FunctionModel& f = m.f;
    const FunctionModel g(
        f.dim(), [f](std::span<const double> x) { return f(x) + ExtendedReal(0.75); }, f.domain(), f.traits(),
        "f + 0.75");
    const auto levels = LevelGrid::Uniform(-4.0, 8.0, 0.125);
    for (const auto& u : UnitDirections(f.dim(), 16, 9)) {
      CHECK(SigmaGSequential(f, u).value <= SigmaGSequential(g, u).value);
      CHECK(SigmaGSublevel(f, u, levels).value <= SigmaGSublevel(g, u, levels).value);
    }
  }
}

TEST_CASE("sigma_g is homogeneous of degree zero") {
  const auto suite = testing::IdentitySuite(20, 600);
  const auto levels = LevelGrid::Uniform(-4.0, 8.0, 0.125);
  for (const auto& m : suite) {
    for (const auto& u : UnitDirections(m.f.dim(), 16, 10)) {
      const auto base = SigmaGSublevel(m.f, u, levels).value;
      for (double s : {0.5, 2.0, 10.0}) CHECK(SigmaGSublevel(m.f, u * s, levels).value == base);
    }
  }
}

TEST_CASE("sequential and sublevel routes agree on bounded radial profiles") {
  for (std::uint64_t seed = 0; seed < 12; seed += 3) {  // kind 0: a arctan(r) + b
    const auto f = testing::RandomRadial(seed, 2);
    const auto levels = LevelGrid::Uniform(-2.0, 4.0, 0.005);
    for (const auto& u : UnitDirections(2, 12, seed)) {
      const auto seq = SigmaGSequential(f, u).value;
      const auto sub = SigmaGSublevel(f, u, levels).value;
      REQUIRE(seq.is_finite());
      REQUIRE(sub.is_finite());
      CHECK(std::abs(seq.value() - sub.value()) <= 2e-2);
    }
  }
}

TEST_CASE("class checks are closed under restriction and transposition") {
  const std::vector<BifunctionModel> family{
      BifunctionModel::Constant(FeasibleSet::Whole(1), 2.0),
      BifunctionModel::Constant(FeasibleSet::Whole(1), -1.0),
      BifunctionModel::Difference(testing::SquaredNorm(1), FeasibleSet::Whole(1)),
      BifunctionModel(
          1, [](std::span<const double> x, std::span<const double> y) { return std::sin(3 * x[0] - 2 * y[0]); },
          FeasibleSet::Whole(1), {}, "sin(3x - 2y)"),
  };
  SampleDesign design;
  design.points = BoxLattice({-1.0}, {1.0}, 0.5);
  for (const auto& psi : family) {
    const auto cyc = CheckCyclicallyAntiQuasimonotone(psi, design);
    const auto pm = CheckPseudomonotone(psi, design);
    CHECK(CheckCyclicallyAntiQuasimonotone(psi.Transposed(), design).status == cyc.status);
    CHECK(CheckPseudomonotone(psi.Transposed(), design).status == pm.status);
    for (std::size_t drop = 0; drop < design.points.size(); ++drop) {
      SampleDesign sub = design;
      sub.points.erase(sub.points.begin() + static_cast<long>(drop));
      if (cyc.status == CheckStatus::kConsistent) {
        CHECK(CheckCyclicallyAntiQuasimonotone(psi, sub).status == CheckStatus::kConsistent);
      }
      if (pm.status == CheckStatus::kConsistent) CHECK(CheckPseudomonotone(psi, sub).status == CheckStatus::kConsistent);
    }
  }
}

TEST_CASE("solver matches the equilibrium oracle and solution sets shrink monotonically") {
  for (std::uint64_t seed = 1000; seed < 1040; ++seed) {
    const auto inst = oracle::RandomDeskInstance(seed);
    CAPTURE(inst.family);
    const auto solved = SolveOnGrid(inst.psi, inst.grid, inst.eps);
    CHECK(solved == oracle::EPSolutionsOracle(inst.psi, inst.grid, inst.eps));
    // Fewer competitors y: S on the big grid, restricted, stays inside S on the small grid.
    double radius = 0.0;
    for (const auto& p : inst.grid) radius = std::max(radius, p.norm());
    std::vector<Point> small;
    for (const auto& p : inst.grid) {
      if (p.norm() <= radius / 2) small.push_back(p);
    }
    if (small.empty()) continue;
    const auto small_solved = SolveOnGrid(inst.psi, small, inst.eps);
    for (const auto& x : solved) {
      if (x.norm() <= radius / 2) CHECK(std::binary_search(small_solved.begin(), small_solved.end(), x));
    }
  }
}

TEST_CASE("certificate evidence is reproducible from its best y") {
  EPInstance inst{.psi = testing::BoxGate()};
  const auto dirs = UnitDirections(2, 12, 4);
  const auto ys = StridedSample(BoxLattice({-2.0, -2.0}, {3.0, 3.0}, 0.5), 64);
  const auto cert = CheckREDirect(inst, dirs, ys);
  for (const auto& d : cert.directions) {
    const auto again = SigmaGSequential(inst.psi.NegatedSection(d.best_y), d.direction);
    CHECK(again.value == d.clearing_value);
    CHECK(d.cleared == (d.clearing_value > ExtendedReal(cert.tolerance)));
  }
}

TEST_CASE("seeded computations are deterministic") {
  const auto f = testing::StepArctan(2);
  const auto dirs = UnitDirections(2, 24, 77);
  CHECK(dirs == UnitDirections(2, 24, 77));
  const auto a = SigmaGSequentialBatch(f, dirs);
  const auto b = SigmaGSequentialBatch(f, dirs);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].value == b[i].value);
  EPInstance inst{.psi = testing::BoxGate()};
  const auto r1 = ExistencePipeline(inst);
  const auto r2 = ExistencePipeline(inst);
  REQUIRE(r1.trace.stages.size() == r2.trace.stages.size());
  for (std::size_t i = 0; i < r1.trace.stages.size(); ++i) {
    CHECK(r1.trace.stages[i].solutions == r2.trace.stages[i].solutions);
  }
  CHECK(oracle::RandomDeskInstance(5).grid == oracle::RandomDeskInstance(5).grid);
}
