#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "asymp/feasible_set.hpp"
#include "asymp/point.hpp"

namespace asymp {

/// Origin-anchored lattice {i * h : i integer} restricted to `region` and to the
/// norm ball of radius `radius`, in ascending lexicographic order. Lattices with
/// h and h/2 nest exactly. Throws kInvalidArgument when h <= 0 or radius <= 0.
std::vector<Point> StageGrid(const FeasibleSet& region, double radius, double h, Norm norm = Norm());

/// Lattice points i * h inside the box [lo, hi], ascending lexicographic order.
std::vector<Point> BoxLattice(const std::vector<double>& lo, const std::vector<double>& hi, double h);

/// Unit vectors (Euclidean). d == 1 gives {-1, +1}; d == 2 gives `count` equally
/// spaced angles; higher dimensions draw normalized Gaussians from `seed`.
std::vector<Point> UnitDirections(std::size_t dim, std::size_t count, std::uint64_t seed);

/// Uniform sample from the Euclidean unit ball.
Point SampleUnitBall(std::size_t dim, std::mt19937_64& rng);

/// Deterministic per-stream generator derived from a base seed.
std::mt19937_64 StreamRng(std::uint64_t seed, std::uint64_t stream);

}  // namespace asymp
