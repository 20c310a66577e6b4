#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "asymp/bifunction_model.hpp"
#include "asymp/error.hpp"
#include "asymp/extended_real.hpp"
#include "asymp/feasible_set.hpp"
#include "asymp/function_model.hpp"
#include "asymp/point.hpp"
#include "asymp/sampling.hpp"
#include "models.hpp"

using namespace asymp;

namespace {

ErrorCode CodeOf(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an asymp::Error");
  return ErrorCode::kInvalidArgument;
}

}  // namespace

TEST_CASE("extended reals order infinities around the finite line") {
  const ExtendedReal lo = ExtendedReal::NegInf();
  const ExtendedReal hi = ExtendedReal::PosInf();
  CHECK(lo < ExtendedReal(-1e308));
  CHECK(ExtendedReal(1e308) < hi);
  CHECK(lo < hi);
  CHECK(ExtendedReal(std::numeric_limits<double>::infinity()) == hi);
  CHECK(ExtendedReal(-std::numeric_limits<double>::infinity()) == lo);
  CHECK(ExtendedReal(-0.0) == ExtendedReal(0.0));
}

TEST_CASE("empty infimum is +inf and empty supremum is -inf") {
  const std::vector<double> none;
  CHECK(Infimum(none) == ExtendedReal::PosInf());
  CHECK(Supremum(none) == ExtendedReal::NegInf());
  CHECK(Infimum(std::vector<double>{3.0, -2.0, 5.0}) == ExtendedReal(-2.0));
}

TEST_CASE("extended arithmetic") {
  CHECK(ExtendedReal::PosInf() + ExtendedReal(5.0) == ExtendedReal::PosInf());
  CHECK(ExtendedReal(5.0) + ExtendedReal::NegInf() == ExtendedReal::NegInf());
  CHECK(ExtendedReal(2.0) - ExtendedReal(0.5) == ExtendedReal(1.5));
  CHECK(-ExtendedReal::PosInf() == ExtendedReal::NegInf());
  CHECK(ExtendedReal::PosInf().Scaled(-2.0) == ExtendedReal::NegInf());
  CHECK(ExtendedReal(1e308) + ExtendedReal(1e308) == ExtendedReal::PosInf());
  CHECK(CodeOf([] { (void)(ExtendedReal::PosInf() + ExtendedReal::NegInf()); }) == ErrorCode::kUndefinedArithmetic);
  CHECK(CodeOf([] { (void)ExtendedReal::NegInf().Scaled(0.0); }) == ErrorCode::kUndefinedArithmetic);
  CHECK(CodeOf([] { (void)ExtendedReal(std::nan("")); }) == ErrorCode::kNotANumber);
  CHECK(CodeOf([] { (void)ExtendedReal::PosInf().value(); }) == ErrorCode::kInvalidArgument);
  CHECK(ExtendedReal::PosInf().ToString() == "+inf");
  CHECK(ExtendedReal(0.25).ToString() == "0.25");
}

TEST_CASE("points and norms") {
  const Point p{3.0, -4.0};
  CHECK(p.norm() == doctest::Approx(5.0));
  CHECK(p.norm(Norm::Max()) == doctest::Approx(4.0));
  CHECK(p.norm(Norm::P(1.0)) == doctest::Approx(7.0));
  CHECK((p - p).is_zero());
  CHECK(Point{0.0, 1.0} < Point{1.0, -5.0});
  CHECK(Dot(p, Point{1.0, 1.0}) == doctest::Approx(-1.0));
  CHECK(CodeOf([] { (void)Point{std::nan("")}; }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { (void)Point{HUGE_VAL}; }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { (void)Norm::P(0.5); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("feasible set membership") {
  const auto box = FeasibleSet::Box({0.0, 0.0}, {1.0, 2.0});
  CHECK(box.Contains(Point{1.0, 2.0}));
  CHECK_FALSE(box.Contains(Point{1.0, 2.1}));
  CHECK(box.convex());
  CHECK(box.closed());
  const auto ball = FeasibleSet::Ball(Point{0.0, 0.0}, 1.0);
  CHECK(ball.Contains(Point{0.6, 0.8}));
  CHECK_FALSE(ball.Contains(Point{0.8, 0.8}));
  const auto half = FeasibleSet::Polyhedron({{{1.0, 1.0}, 1.0}});
  CHECK(half.Contains(Point{-10.0, 11.0}));
  CHECK_FALSE(half.Contains(Point{1.0, 1.0}));
  const auto both = FeasibleSet::Union({box, ball});
  CHECK(both.Contains(Point{-0.5, 0.0}));
  CHECK_FALSE(both.convex());
  const auto k3 = FeasibleSet::Whole(2).Truncate(3.0);
  CHECK(k3.Contains(Point{3.0, 0.0}));
  CHECK_FALSE(k3.Contains(Point{3.0, 0.1}));
  CHECK(CodeOf([&] { (void)box.Contains(Point{0.0}); }) == ErrorCode::kDimensionMismatch);
  CHECK(CodeOf([] { (void)FeasibleSet::Whole(2).Truncate(0.0); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([] { (void)FeasibleSet::Polyhedron({{{0.0, 0.0}, 1.0}}); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("function models evaluate to +inf off their domain") {
  const auto f = FunctionModel::Constant(FeasibleSet::Box({0.0}, {1.0}), 2.0);
  CHECK(f.Evaluate(Point{0.5}) == ExtendedReal(2.0));
  CHECK(f.Evaluate(Point{1.5}) == ExtendedReal::PosInf());
  CHECK(CodeOf([&] { (void)f.Evaluate(Point{0.5, 0.5}); }) == ErrorCode::kDimensionMismatch);
}

TEST_CASE("improper functions are rejected at construction") {
  auto make = [] {
    return FunctionModel(
        2, [](std::span<const double>) { return ExtendedReal::PosInf(); }, FeasibleSet::Whole(2), {}, "+inf");
  };
  CHECK(CodeOf(make) == ErrorCode::kImproperFunction);
}

TEST_CASE("max-affine models") {
  const auto f = FunctionModel::MaxAffine(2, {{{1.0, 0.0}, 0.0}, {{0.0, 1.0}, 1.0}}, ExtendedReal(-3.0));
  CHECK(f.Evaluate(Point{2.0, 0.0}) == ExtendedReal(2.0));
  CHECK(f.Evaluate(Point{0.0, 4.0}) == ExtendedReal(3.0));
  CHECK(f.Evaluate(Point{-10.0, -10.0}) == ExtendedReal(-3.0));
}

TEST_CASE("radial spot check") {
  CHECK(SpotCheckRadial(testing::StepArctan(2), 64, 7, 1e-12));
  CHECK_FALSE(SpotCheckRadial(testing::Linear({1.0, 0.0}), 64, 7, 1e-12));
}

TEST_CASE("bifunction forms") {
  const auto k = FeasibleSet::Whole(2);
  const auto psi = BifunctionModel::Difference(testing::SquaredNorm(2), k);
  CHECK(psi.Evaluate(Point{1.0, 0.0}, Point{0.0, 1.0}) == doctest::Approx(0.0));
  CHECK(psi.Evaluate(Point{0.0, 0.0}, Point{1.0, 1.0}) == doctest::Approx(2.0));
  const auto t = psi.Transposed();
  CHECK(t.Evaluate(Point{0.0, 0.0}, Point{1.0, 1.0}) == doctest::Approx(-2.0));

  const auto section = testing::YIdentity().NegatedSection(Point{-2.0});
  CHECK(std::holds_alternative<ConstantForm>(section.form()));
  CHECK(section.Evaluate(Point{123.0}) == ExtendedReal(2.0));

  const auto nan_psi = BifunctionModel(
      1, [](std::span<const double>, std::span<const double>) { return std::nan(""); }, FeasibleSet::Whole(1), {},
      "nan");
  CHECK(CodeOf([&] { (void)nan_psi.Evaluate(Point{0.0}, Point{0.0}); }) == ErrorCode::kNonFiniteBifunction);
}

TEST_CASE("stage grids are origin-anchored, nested and lexicographic") {
  const auto k = FeasibleSet::Whole(2);
  const auto coarse = StageGrid(k, 2.0, 0.5);
  const auto fine = StageGrid(k, 2.0, 0.25);
  CHECK(std::is_sorted(coarse.begin(), coarse.end()));
  for (const auto& p : coarse) CHECK(std::binary_search(fine.begin(), fine.end(), p));
  CHECK(std::find(coarse.begin(), coarse.end(), Point{0.0, 0.0}) != coarse.end());
  for (const auto& p : coarse) CHECK(p.norm() <= 2.0);
  const auto c = StageGrid(FeasibleSet::Box({0.0, 0.0}, {1.0, 2.0}), 3.0, 0.25);
  CHECK(c.size() == 5 * 9);
}

TEST_CASE("unit directions") {
  const auto one = UnitDirections(1, 10, 3);
  REQUIRE(one.size() == 2);
  CHECK(one[0] == Point{-1.0});
  const auto two = UnitDirections(2, 100, 3);
  CHECK(two.size() == 100);
  for (const auto& u : two) CHECK(u.norm() == doctest::Approx(1.0));
  CHECK(UnitDirections(3, 5, 11) == UnitDirections(3, 5, 11));
}
