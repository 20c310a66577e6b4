#include <doctest.h>

#include <cmath>

#include "asymp/cones.hpp"
#include "asymp/error.hpp"

using namespace asymp;

namespace {

const FeasibleSet kOrthant = FeasibleSet::Polyhedron({{{-1.0, 0.0}, 0.0}, {{0.0, -1.0}, 0.0}});

}  // namespace

TEST_CASE("bounded ball excludes every nonzero direction with a witness") {
  const auto ball = FeasibleSet::Ball(Point{0.0, 0.0}, 1.0);
  const auto r = RecessionMembershipConvex(ball, Point{1.0, 0.0}, Point{0.0, 0.0});
  CHECK_FALSE(r.in_cone());
  CHECK(r.exact);
  REQUIRE(r.witness_t.has_value());
  CHECK(*r.witness_t == 2.0);
  CHECK_FALSE(ball.Contains(Point{*r.witness_t, 0.0}));
}

TEST_CASE("orthant recession is exact and agrees with brute-force rays") {
  const auto r = RecessionMembershipConvex(kOrthant, Point{1.0, 2.0}, Point{0.0, 0.0});
  CHECK(r.in_cone());
  CHECK(r.exact);
  ConeProbe fine;
  for (int j = 1; j <= 1000; ++j) fine.t_grid.push_back(0.01 * j * j);
  const auto probed = RecessionMembershipConvex(kOrthant, Point{1.0, 2.0}, Point{0.0, 0.0}, fine);
  for (const auto& s : probed.probes) CHECK(s.member);
}

TEST_CASE("whole space contains every direction") {
  const auto r = RecessionMembershipConvex(FeasibleSet::Whole(2), Point{-3.0, 0.5}, Point{1.0, 1.0});
  CHECK(r.in_cone());
  CHECK(r.exact);
}

TEST_CASE("ray probing for predicate sets") {
  // Closed convex region below the parabola-like curve x2 <= sqrt(x1).
  const auto region = FeasibleSet::Predicate(
      2, [](std::span<const double> x) { return x[0] >= 0 && x[1] <= std::sqrt(x[0]); }, true, true, "x2 <= sqrt x1");
  const auto along = RecessionMembershipConvex(region, Point{1.0, 0.0}, Point{0.0, 0.0});
  CHECK(along.in_cone());
  CHECK_FALSE(along.exact);
  const auto up = RecessionMembershipConvex(region, Point{0.0, 1.0}, Point{1.0, 0.0});
  CHECK_FALSE(up.in_cone());
  REQUIRE(up.witness_t.has_value());
}

TEST_CASE("convex ray test rejects bad inputs") {
  const auto ball = FeasibleSet::Ball(Point{0.0, 0.0}, 1.0);
  try {
    (void)RecessionMembershipConvex(ball, Point{1.0, 0.0}, Point{2.0, 0.0});
    FAIL("expected kBaseNotMember");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBaseNotMember);
  }
  const auto ring = FeasibleSet::Predicate(
      2, [](std::span<const double> x) { return std::hypot(x[0], x[1]) >= 1.0; }, false, true, "outside ball");
  try {
    (void)RecessionMembershipConvex(ring, Point{1.0, 0.0}, Point{2.0, 0.0});
    FAIL("expected kNonConvexSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonConvexSet);
  }
}

TEST_CASE("sampled membership finds the discrete parabola sequence") {
  const auto parabola = FeasibleSet::Predicate(
      2,
      [](std::span<const double> x) {
        const double n = std::round(x[1]);
        return n >= 1 && x[1] == n && x[0] == n * n;
      },
      false, true, "{(n^2, n)}");
  std::vector<AsymptoticShell> shells;
  for (int k = 2; k <= 20; ++k) shells.push_back({double(k * k), 1.0 / k});
  const auto r = AsymptoticMembershipSampled(parabola, Point{1.0, 0.0}, shells);
  CHECK(r.in_cone());
  for (const auto& s : r.shells) {
    REQUIRE(s.member.has_value());
    CHECK(parabola.Contains(*s.member));
  }
}

TEST_CASE("sampled membership: bounded ball and whole space") {
  std::vector<AsymptoticShell> shells;
  for (int k = 1; k <= 10; ++k) shells.push_back({double(k), 1.0 / k});
  const auto ball = FeasibleSet::Ball(Point{0.0, 0.0}, 1.0);
  const auto r = AsymptoticMembershipSampled(ball, Point{0.0, 1.0}, shells);
  CHECK_FALSE(r.in_cone());
  REQUIRE(r.failed_shell_t.has_value());
  CHECK(*r.failed_shell_t >= 2.0);
  CHECK(AsymptoticMembershipSampled(FeasibleSet::Whole(2), Point{0.3, -0.7}, DefaultShells()).in_cone());
  try {
    (void)AsymptoticMembershipSampled(ball, Point{0.0, 1.0}, {});
    FAIL("expected kEmptySchedule");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kEmptySchedule);
  }
}

TEST_CASE("sampled membership is deterministic") {
  const auto wedge = FeasibleSet::Predicate(
      2, [](std::span<const double> x) { return std::abs(x[1]) <= 0.1 * x[0]; }, false, true, "thin wedge");
  const auto a = AsymptoticMembershipSampled(wedge, Point{1.0, 0.05}, DefaultShells());
  const auto b = AsymptoticMembershipSampled(wedge, Point{1.0, 0.05}, DefaultShells());
  REQUIRE(a.shells.size() == b.shells.size());
  for (std::size_t i = 0; i < a.shells.size(); ++i) CHECK(a.shells[i].member == b.shells[i].member);
}

TEST_CASE("cone of an intersection") {
  const auto k1 = FeasibleSet::Polyhedron({{{-1.0, 0.0}, 0.0}});
  const auto k2 = FeasibleSet::Polyhedron({{{0.0, -1.0}, 0.0}});
  const auto both = ConeIntersectionCheck({k1, k2}, Point{1.0, 1.0}, ConeProbe::Default(), Point{0.0, 0.0});
  CHECK(both.left_in_cone);
  CHECK(both.right_all);
  CHECK(both.equality_holds);

  const auto ball = FeasibleSet::Ball(Point{0.0, 0.0}, 1.0);
  const auto bounded =
      ConeIntersectionCheck({ball, FeasibleSet::Whole(2)}, Point{0.0, 1.0}, ConeProbe::Default(), Point{0.0, 0.0});
  CHECK_FALSE(bounded.left_in_cone);
  CHECK_FALSE(bounded.right_all);
  CHECK(bounded.inclusion_holds);

  const auto same = ConeIntersectionCheck({FeasibleSet::Whole(2), FeasibleSet::Whole(2)}, Point{2.0, -1.0},
                                          ConeProbe::Default(), Point{0.0, 0.0});
  CHECK(same.left_in_cone);
  CHECK(same.right_all);

  try {
    (void)ConeIntersectionCheck({k1, k2}, Point{1.0, 1.0});
    FAIL("expected kMissingBasePoint");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingBasePoint);
  }
}
