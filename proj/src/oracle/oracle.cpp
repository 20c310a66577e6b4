#include "asymp/oracle/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "asymp/error.hpp"

namespace asymp::oracle {

std::vector<Point> Lattice(const std::vector<double>& lo, const std::vector<double>& hi, double h) {
  const std::size_t d = lo.size();
  std::vector<std::vector<double>> axes(d);
  for (std::size_t i = 0; i < d; ++i) {
    long long first = static_cast<long long>(std::ceil(lo[i] / h));
    while (static_cast<double>(first - 1) * h >= lo[i]) --first;
    while (static_cast<double>(first) * h < lo[i]) ++first;
    for (long long k = first; static_cast<double>(k) * h <= hi[i]; ++k) axes[i].push_back(static_cast<double>(k) * h);
  }
  std::vector<Point> out;
  if (d == 0) return out;
  std::vector<std::vector<double>> rows{{}};
  for (std::size_t i = 0; i < d; ++i) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : rows) {
      for (double v : axes[i]) {
        auto row = prefix;
        row.push_back(v);
        next.push_back(std::move(row));
      }
    }
    rows = std::move(next);
  }
  for (auto& r : rows) out.emplace_back(std::move(r));
  return out;
}

GridArgmin GridArgminOracle(const FunctionModel& f, const std::vector<double>& lo, const std::vector<double>& hi,
                            double h, const FeasibleSet* region, double tie) {
  GridArgmin result;
  result.value = ExtendedReal::PosInf();
  std::vector<std::pair<Point, ExtendedReal>> scanned;
  for (const auto& x : Lattice(lo, hi, h)) {
    if (region != nullptr && !region->Contains(x)) continue;
    const ExtendedReal v = f.Evaluate(x);
    scanned.emplace_back(x, v);
    if (v < result.value) result.value = v;
  }
  if (!result.value.is_finite()) return result;
  for (const auto& [x, v] : scanned) {
    if (v.is_finite() && v.value() <= result.value.value() + tie) result.points.push_back(x);
  }
  return result;
}

std::vector<bool> RayRecessionOracle(const FeasibleSet& a, const Point& u, const Point& base,
                                     const std::vector<double>& t_grid) {
  std::vector<bool> bits;
  for (double t : t_grid) {
    std::vector<double> x(base.dim());
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = base[i] + t * u[i];
    bits.push_back(a.Contains(Point(std::move(x))));
  }
  return bits;
}

std::vector<Point> EPSolutionsOracle(const BifunctionModel& psi, const std::vector<Point>& grid, double eps) {
  std::vector<double> worst(grid.size(), INFINITY);
  for (std::size_t jy = grid.size(); jy-- > 0;) {
    for (std::size_t ix = grid.size(); ix-- > 0;) {
      worst[ix] = std::min(worst[ix], psi(grid[ix].coords(), grid[jy].coords()));
    }
  }
  std::vector<Point> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (worst[i] >= -eps) out.push_back(grid[i]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

double Uniform(std::mt19937_64& rng, double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); }

std::vector<double> RandomVector(std::mt19937_64& rng, std::size_t d, double a, double b) {
  std::vector<double> v(d);
  for (auto& x : v) x = Uniform(rng, a, b);
  return v;
}

double DotRaw(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

FeasibleSet RandomFeasible(std::mt19937_64& rng, std::size_t d) {
  switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
    case 0:
      return FeasibleSet::Whole(d);
    case 1: {
      std::vector<double> lo(d), hi(d);
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = Uniform(rng, -3.0, -0.2);
        hi[i] = Uniform(rng, 0.2, 3.0);
      }
      return FeasibleSet::Box(lo, hi);
    }
    default: {
      std::vector<double> normal = RandomVector(rng, d, -1.0, 1.0);
      if (std::abs(normal[0]) < 0.1) normal[0] = 0.5;
      return FeasibleSet::Polyhedron({{normal, Uniform(rng, 0.1, 1.0)}});
    }
  }
}

}  // namespace

DeskInstance RandomDeskInstance(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t d = std::uniform_int_distribution<std::size_t>(1, 2)(rng);
  const double n = std::uniform_int_distribution<int>(1, 2)(rng);
  const double h = n / 20.0;
  const FeasibleSet k = RandomFeasible(rng, d);
  const double eps_choices[] = {1e-9, 0.05, 0.2};
  const double eps = eps_choices[std::uniform_int_distribution<int>(0, 2)(rng)];

  std::vector<Point> grid;
  for (auto& x : Lattice(std::vector<double>(d, -n), std::vector<double>(d, n), h)) {
    if (std::sqrt(DotRaw(x.coords(), x.coords())) <= n && k.Contains(x)) grid.push_back(std::move(x));
  }

  const int family = std::uniform_int_distribution<int>(0, 5)(rng);
  switch (family) {
    case 0: {
      const auto c = RandomVector(rng, d, -1.0, 1.0);
      const auto a = RandomVector(rng, d, -0.5, 0.5);
      const double curvature = Uniform(rng, 0.0, 2.0);
      FunctionModel f(
          d,
          [c, a, curvature](std::span<const double> x) {
            double q = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) q += (x[i] - c[i]) * (x[i] - c[i]);
            return ExtendedReal(curvature * q + DotRaw(a, x));
          },
          FeasibleSet::Whole(d), {}, "random quadratic");
      return {"difference", BifunctionModel::Difference(f, k), grid, eps};
    }
    case 1: {
      std::vector<double> m(d * d);
      for (auto& v : m) v = Uniform(rng, -1.0, 1.0);
      for (std::size_t i = 0; i < d; ++i) m[i * d + i] += 1.0;
      const auto b = RandomVector(rng, d, -0.5, 0.5);
      auto field = [m, b, d](std::span<const double> x, std::span<const double> y) {
        double s = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
          double row = b[i];
          for (std::size_t j = 0; j < d; ++j) row += m[i * d + j] * x[j];
          s += row * (y[i] - x[i]);
        }
        return s;
      };
      return {"affine_variational", BifunctionModel(d, field, k, {}, "<Mx + b, y - x>"), grid, eps};
    }
    case 2: {
      std::vector<double> lo(d), hi(d);
      for (std::size_t i = 0; i < d; ++i) {
        lo[i] = Uniform(rng, -1.0, 0.5);
        hi[i] = lo[i] + Uniform(rng, 0.2, 1.5);
      }
      auto in_c = [lo, hi](std::span<const double> p) {
        for (std::size_t i = 0; i < p.size(); ++i) {
          if (p[i] < lo[i] || p[i] > hi[i]) return false;
        }
        return true;
      };
      auto field = [in_c](std::span<const double> x, std::span<const double> y) {
        return in_c(x) || in_c(y) ? 0.0 : -1.0;
      };
      return {"indicator_gated", BifunctionModel(d, field, k, {}, "0 on C x K u K x C, -1 elsewhere"), grid, eps};
    }
    case 3: {
      const double values[] = {-1.0, 0.0, 2.0};
      return {"constant", BifunctionModel::Constant(k, values[std::uniform_int_distribution<int>(0, 2)(rng)]), grid,
              eps};
    }
    case 4: {
      const auto c = RandomVector(rng, d, -1.0, 1.0);
      const double e = Uniform(rng, -0.5, 1.5);
      return {"y_only", BifunctionModel::YOnly(k, [c, e](std::span<const double> y) { return DotRaw(c, y) + e; },
                                               "<c, y> + e"),
              grid, eps};
    }
    default: {
      const auto a = RandomVector(rng, d, -2.0, 2.0);
      const auto b = RandomVector(rng, d, -2.0, 2.0);
      const double shift = Uniform(rng, 0.0, 1.0);
      auto field = [a, b, shift](std::span<const double> x, std::span<const double> y) {
        return std::sin(DotRaw(a, x)) * std::cos(DotRaw(b, y)) + shift;
      };
      return {"trigonometric", BifunctionModel(d, field, k, {}, "sin(<a,x>) cos(<b,y>) + s"), grid, eps};
    }
  }
}

}  // namespace asymp::oracle
