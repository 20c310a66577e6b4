#include <doctest.h>

#include <cmath>

#include "asymp/oracle/oracle.hpp"
#include "models.hpp"

using namespace asymp;
using namespace asymp::oracle;

TEST_CASE("grid argmin oracle") {
  const auto tent = GridArgminOracle(testing::TentArctan(), {-5.0}, {5.0}, 1e-3);
  CHECK(tent.points == std::vector<Point>{Point{0.0}});
  CHECK(tent.value == ExtendedReal(0.0));
  const auto sq = GridArgminOracle(testing::SquaredNorm(2), {-1.0, -1.0}, {1.0, 1.0}, 0.25);
  CHECK(sq.points == std::vector<Point>{Point{0.0, 0.0}});
  const auto four = GridArgminOracle(FunctionModel::Constant(2, 4.0), {-1.0, -1.0}, {1.0, 1.0}, 0.5);
  CHECK(four.points.size() == 25);
  CHECK(four.value == ExtendedReal(4.0));
}

TEST_CASE("ray recession oracle") {
  const std::vector<double> ts{0.5, 1.0, 2.0, 4.0, 100.0};
  const auto orthant = FeasibleSet::Box({0.0, 0.0}, {HUGE_VAL, HUGE_VAL});
  for (bool b : RayRecessionOracle(orthant, Point{1.0, 1.0}, Point{0.0, 0.0}, ts)) CHECK(b);
  const auto ball = FeasibleSet::Ball(Point{0.0, 0.0}, 1.0);
  CHECK(RayRecessionOracle(ball, Point{1.0, 0.0}, Point{0.0, 0.0}, ts) ==
        std::vector<bool>{true, true, false, false, false});
  const auto parabola = FeasibleSet::Predicate(
      2, [](std::span<const double> x) { return x[0] >= 0 && x[1] <= std::sqrt(x[0]); }, true, true, "x2 <= sqrt x1");
  for (bool b : RayRecessionOracle(parabola, Point{1.0, 0.0}, Point{0.0, 0.0}, ts)) CHECK(b);
}

TEST_CASE("equilibrium oracle") {
  const auto grid = Lattice({-3.0, -3.0}, {3.0, 3.0}, 0.25);
  std::vector<Point> kn;
  for (const auto& p : grid) {
    if (p.norm() <= 3.0) kn.push_back(p);
  }
  const auto c = EPSolutionsOracle(testing::BoxGate(), kn, 1e-9);
  CHECK(c.size() == 45);
  for (const auto& p : c) CHECK(testing::InBoxC(p.coords()));
  CHECK(EPSolutionsOracle(BifunctionModel::Constant(FeasibleSet::Whole(2), -1.0), kn, 1e-9).empty());
  const auto abs_f = testing::Euclid(1);
  const auto line = Lattice({-1.0}, {1.0}, 0.25);
  CHECK(EPSolutionsOracle(BifunctionModel::Difference(abs_f, FeasibleSet::Whole(1)), line, 1e-9) ==
        std::vector<Point>{Point{0.0}});
}

TEST_CASE("lattices are origin-anchored") {
  const auto l = Lattice({-0.3}, {0.6}, 0.25);
  CHECK(l == std::vector<Point>{Point{-0.25}, Point{0.0}, Point{0.25}, Point{0.5}});
}

TEST_CASE("random desk instances are reproducible and small") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = RandomDeskInstance(seed);
    const auto b = RandomDeskInstance(seed);
    CHECK(a.family == b.family);
    CHECK(a.grid == b.grid);
    CHECK(!a.grid.empty());
    CHECK(a.grid.size() <= 41 * 41);
  }
}
