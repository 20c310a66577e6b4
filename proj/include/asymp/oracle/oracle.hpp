#pragma once

// Deliberately naive brute-force references. Nothing here calls the analysis or
// solver code; only the model types are shared.

#include <cstdint>
#include <string>
#include <vector>

#include "asymp/bifunction_model.hpp"
#include "asymp/feasible_set.hpp"
#include "asymp/function_model.hpp"
#include "asymp/point.hpp"

namespace asymp::oracle {

struct OracleConfig {
  std::vector<double> lo;
  std::vector<double> hi;
  double resolution = 0.25;
  std::vector<double> t_grid;
  std::uint64_t seed = 1;
};

/// Points i * h (i integer) inside [lo, hi], lexicographic order.
std::vector<Point> Lattice(const std::vector<double>& lo, const std::vector<double>& hi, double h);

struct GridArgmin {
  std::vector<Point> points;
  ExtendedReal value;
};

/// Exhaustive scan of the lattice in [lo, hi] (restricted to `region` when
/// given). Returns every point within `tie` of the minimum.
GridArgmin GridArgminOracle(const FunctionModel& f, const std::vector<double>& lo, const std::vector<double>& hi,
                            double h, const FeasibleSet* region = nullptr, double tie = 1e-12);

/// Membership of base + t u for each t.
std::vector<bool> RayRecessionOracle(const FeasibleSet& a, const Point& u, const Point& base,
                                     const std::vector<double>& t_grid);

/// Grid points x with psi(x, y) >= -eps for all grid y. Loops run y-outer,
/// x-inner, from the back, with no early exit. Returned in lexicographic order.
std::vector<Point> EPSolutionsOracle(const BifunctionModel& psi, const std::vector<Point>& grid, double eps);

struct DeskInstance {
  std::string family;
  BifunctionModel psi;
  std::vector<Point> grid;  // K_n lattice, at most 41^d points
  double eps = 1e-9;
};

/// Seeded random equilibrium instance in dimension 1 or 2 drawn from a few
/// families (difference of random functions, affine variational forms,
/// indicator-gated, constant, y-only).
DeskInstance RandomDeskInstance(std::uint64_t seed);

}  // namespace asymp::oracle
