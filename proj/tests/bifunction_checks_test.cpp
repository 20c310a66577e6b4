#include <doctest.h>

#include "asymp/bifunction_checks.hpp"
#include "asymp/error.hpp"
#include "asymp/sampling.hpp"
#include "models.hpp"

using namespace asymp;

namespace {

SampleDesign Design(std::vector<Point> pts) {
  SampleDesign d;
  d.points = std::move(pts);
  return d;
}

BifunctionModel Antisymmetric() {
  return BifunctionModel(
      1, [](std::span<const double> x, std::span<const double> y) { return y[0] - x[0]; }, FeasibleSet::Whole(1), {},
      "y - x");
}

std::vector<Point> Line(int count) {
  std::vector<Point> pts;
  for (int i = 0; i < count; ++i) pts.push_back(Point{-1.0 + 0.5 * i});
  return pts;
}

}  // namespace

TEST_CASE("pseudomonotonicity") {
  const auto line = Design({Point{-1.0}, Point{0.0}, Point{1.0}});
  CHECK(CheckPseudomonotone(Antisymmetric(), line).status == CheckStatus::kConsistent);

  const auto one = CheckPseudomonotone(BifunctionModel::Constant(FeasibleSet::Whole(1), 1.0), line);
  CHECK(one.status == CheckStatus::kRefuted);
  CHECK(one.witness.size() == 2);
  CHECK(one.witness_values == std::vector<double>{1.0, 1.0});

  const auto diff = BifunctionModel::Difference(testing::SquaredNorm(2), FeasibleSet::Whole(2));
  const auto plane = Design(BoxLattice({-1.0, -1.0}, {1.0, 1.0}, 0.5));
  const auto r = CheckPseudomonotone(diff, plane);
  CHECK(r.status == CheckStatus::kConsistent);
  CHECK(r.tuples_tested == 25 * 25);
}

TEST_CASE("cyclic anti-quasimonotonicity") {
  const auto five = Design(Line(5));
  const auto k = FeasibleSet::Whole(1);
  for (double r : {0.0, 3.0}) {
    const auto rep = CheckCyclicallyAntiQuasimonotone(BifunctionModel::Constant(k, r), five);
    CHECK(rep.status == CheckStatus::kConsistent);
    CHECK(rep.tuples_tested == 25 + 125 + 625);
    CHECK_FALSE(rep.partial);
  }
  const auto diff = BifunctionModel::Difference(testing::TentArctan(), k);
  CHECK(CheckCyclicallyAntiQuasimonotone(diff, five).status == CheckStatus::kConsistent);

  const auto neg = CheckCyclicallyAntiQuasimonotone(BifunctionModel::Constant(k, -1.0), five);
  CHECK(neg.status == CheckStatus::kRefuted);
  REQUIRE(neg.witness.size() == 2);
  CHECK(neg.witness[0] == neg.witness[1]);
  CHECK(neg.witness_values == std::vector<double>{-1.0, -1.0});
}

TEST_CASE("cyclic witness is the shortest lexicographically first cycle") {
  // Negative exactly on the edges 2 -> 1 -> 0 -> 2 of three points.
  const auto psi = BifunctionModel(
      1,
      [](std::span<const double> x, std::span<const double> y) {
        const int a = static_cast<int>(x[0]);
        const int b = static_cast<int>(y[0]);
        return (a == 2 && b == 1) || (a == 1 && b == 0) || (a == 0 && b == 2) ? -1.0 : 1.0;
      },
      FeasibleSet::Whole(1), {}, "3-cycle");
  const auto rep = CheckCyclicallyAntiQuasimonotone(psi, Design({Point{0.0}, Point{1.0}, Point{2.0}}));
  REQUIRE(rep.status == CheckStatus::kRefuted);
  CHECK(rep.witness == std::vector<Point>{Point{0.0}, Point{2.0}, Point{1.0}});
}

TEST_CASE("cyclic budget marks partial reports") {
  auto d = Design(Line(5));
  d.max_tuples = 200;
  const auto rep = CheckCyclicallyAntiQuasimonotone(BifunctionModel::Constant(FeasibleSet::Whole(1), 1.0), d);
  CHECK(rep.partial);
  CHECK(rep.status == CheckStatus::kConsistent);
}

TEST_CASE("local domination") {
  const auto k = FeasibleSet::Whole(1);
  const auto pts = Line(5);
  const auto d = Design(pts);
  const auto diff = BifunctionModel::Difference(testing::TentArctan(), k);
  CHECK(CheckLocallyDominated(diff, d, pts).status == CheckStatus::kWitnessed);
  CHECK(CheckLocallyDominated(BifunctionModel::Constant(k, 0.0), d, pts).status == CheckStatus::kWitnessed);
  const auto one = CheckLocallyDominated(BifunctionModel::Constant(k, 1.0), d, pts);
  CHECK(one.status == CheckStatus::kUnwitnessed);
  CHECK(one.witness.size() == 1);
}

TEST_CASE("transfer quasi-convexity in y") {
  const auto box = FeasibleSet::Box({-1.0, -1.0}, {1.0, 1.0});
  const auto d = Design(BoxLattice({-1.0, -1.0}, {1.0, 1.0}, 1.0));
  const auto diff = BifunctionModel::Difference(testing::SquaredNorm(2), box);
  CHECK(CheckTransferQuasiConvexInY(diff, d).status == CheckStatus::kWitnessed);
  CHECK(CheckTransferQuasiConvexInY(BifunctionModel::Constant(box, 0.0), d).status == CheckStatus::kWitnessed);
  const auto neg = CheckTransferQuasiConvexInY(BifunctionModel::Constant(box, -1.0), d);
  CHECK(neg.status == CheckStatus::kUnwitnessed);

  const auto ring = FeasibleSet::Union({FeasibleSet::Ball(Point{-3.0, 0.0}, 1.0), FeasibleSet::Ball(Point{3.0, 0.0}, 1.0)});
  try {
    (void)CheckTransferQuasiConvexInY(BifunctionModel::Constant(ring, 0.0), Design({Point{3.0, 0.0}}));
    FAIL("expected kNonConvexSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kNonConvexSet);
  }
}

TEST_CASE("design points must lie in K") {
  const auto box = FeasibleSet::Box({0.0}, {1.0});
  try {
    (void)CheckPseudomonotone(BifunctionModel::Constant(box, 0.0), Design({Point{2.0}}));
    FAIL("expected kBaseNotMember");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBaseNotMember);
  }
}

TEST_CASE("condition K-sigma recognition") {
  const auto k = FeasibleSet::Whole(2);
  const auto generic = testing::BoxGate();
  CHECK(RecognizeKSigma(generic).kind == KSigmaRecognition::Kind::kAutomatic);
  const auto three = RecognizeKSigma(BifunctionModel::Constant(k, 3.0));
  CHECK(three.kind == KSigmaRecognition::Kind::kStructural);
  CHECK(three.structural_class == "constant");
  CHECK(RecognizeKSigma(BifunctionModel::Constant(k, -3.0)).kind == KSigmaRecognition::Kind::kAutomatic);
  const auto diff = RecognizeKSigma(BifunctionModel::Difference(testing::Euclid(2), k));
  CHECK(diff.kind == KSigmaRecognition::Kind::kStructural);
  CHECK(diff.structural_class == "difference");
}
