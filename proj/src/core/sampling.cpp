#include "asymp/sampling.hpp"

#include <cmath>
#include <numbers>

#include "asymp/error.hpp"

namespace asymp {

namespace {

// Index range of lattice coordinates i * h inside [lo, hi].
std::pair<long long, long long> IndexRange(double lo, double hi, double h) {
  const double slack = 1e-9;
  return {static_cast<long long>(std::ceil(lo / h - slack)), static_cast<long long>(std::floor(hi / h + slack))};
}

template <typename Visit>
void ForEachLatticePoint(const std::vector<std::pair<long long, long long>>& ranges, double h, Visit&& visit) {
  const std::size_t d = ranges.size();
  for (const auto& [a, b] : ranges) {
    if (a > b) return;
  }
  std::vector<long long> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = ranges[i].first;
  std::vector<double> x(d);
  while (true) {
    for (std::size_t i = 0; i < d; ++i) x[i] = static_cast<double>(idx[i]) * h;
    visit(x);
    // Odometer with the last coordinate fastest, giving lexicographic order.
    std::size_t k = d;
    while (k > 0) {
      --k;
      if (idx[k] < ranges[k].second) {
        ++idx[k];
        break;
      }
      idx[k] = ranges[k].first;
      if (k == 0) return;
    }
  }
}

}  // namespace

std::vector<Point> StageGrid(const FeasibleSet& region, double radius, double h, Norm norm) {
  Require(std::isfinite(h) && h > 0, ErrorCode::kInvalidArgument, "grid resolution must be positive");
  Require(std::isfinite(radius) && radius > 0, ErrorCode::kInvalidArgument, "stage radius must be positive");
  // Every p-norm dominates the max-norm, so the ball sits in the box [-n, n]^d.
  std::vector<std::pair<long long, long long>> ranges(region.dim(), IndexRange(-radius, radius, h));
  std::vector<Point> out;
  ForEachLatticePoint(ranges, h, [&](const std::vector<double>& x) {
    if (norm(x) <= radius && region.ContainsUnchecked(x)) out.emplace_back(x);
  });
  return out;
}

std::vector<Point> BoxLattice(const std::vector<double>& lo, const std::vector<double>& hi, double h) {
  RequireDim(lo.size(), hi.size(), "lattice box");
  Require(std::isfinite(h) && h > 0, ErrorCode::kInvalidArgument, "grid resolution must be positive");
  std::vector<std::pair<long long, long long>> ranges;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    Require(std::isfinite(lo[i]) && std::isfinite(hi[i]), ErrorCode::kInvalidArgument, "lattice box must be finite");
    ranges.push_back(IndexRange(lo[i], hi[i], h));
  }
  std::vector<Point> out;
  ForEachLatticePoint(ranges, h, [&](const std::vector<double>& x) { out.emplace_back(x); });
  return out;
}

std::vector<Point> UnitDirections(std::size_t dim, std::size_t count, std::uint64_t seed) {
  Require(dim >= 1, ErrorCode::kInvalidArgument, "dimension must be at least 1");
  if (dim == 1) return {Point{-1.0}, Point{1.0}};
  std::vector<Point> out;
  out.reserve(count);
  if (dim == 2) {
    for (std::size_t k = 0; k < count; ++k) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count);
      out.push_back(Point{std::cos(angle), std::sin(angle)});
    }
    return out;
  }
  auto rng = StreamRng(seed, 0x5eed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  while (out.size() < count) {
    std::vector<double> v(dim);
    double len = 0.0;
    for (double& c : v) {
      c = gauss(rng);
      len += c * c;
    }
    len = std::sqrt(len);
    if (len < 1e-12) continue;
    for (double& c : v) c /= len;
    out.emplace_back(std::move(v));
  }
  return out;
}

Point SampleUnitBall(std::size_t dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<double> v(dim);
  double len = 0.0;
  do {
    len = 0.0;
    for (double& c : v) {
      c = gauss(rng);
      len += c * c;
    }
  } while (len < 1e-24);
  len = std::sqrt(len);
  const double r = std::pow(unit(rng), 1.0 / static_cast<double>(dim));
  for (double& c : v) c *= r / len;
  return Point(std::move(v));
}

std::mt19937_64 StreamRng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace asymp
