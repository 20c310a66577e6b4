#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asymp/feasible_set.hpp"
#include "asymp/point.hpp"

namespace asymp::io {

enum class ValueType { kScalar, kVector, kBool };

struct Expr;

/// Names and sets visible while compiling an expression.
struct ExprScope {
  std::size_t dim = 1;
  bool allow_x = true;
  bool allow_y = false;
  Norm norm;
  /// Sets usable through in(v, Name); the table may grow after compilation.
  std::shared_ptr<std::vector<FeasibleSet>> sets;
  std::map<std::string, std::size_t> set_index;
};

/// A type-checked expression. Evaluation is pure and thread-safe.
class CompiledExpr {
 public:
  /// Throws ParseError. `line` and `column_offset` place diagnostics in the file.
  static CompiledExpr Compile(const std::string& text, const ExprScope& scope, int line = 0, int column_offset = 0);

  ValueType type() const;
  bool uses_x() const;
  bool uses_y() const;
  /// Canonical text: parses back to the same tree.
  std::string ToString() const;

  double Scalar(std::span<const double> x, std::span<const double> y = {}) const;
  bool Bool(std::span<const double> x, std::span<const double> y = {}) const;

 private:
  std::shared_ptr<const Expr> root_;
  std::shared_ptr<std::vector<FeasibleSet>> sets_;
  Norm norm_;
};

/// Shortest round-tripping decimal text; infinities print as "inf" / "-inf".
std::string FormatNumber(double v);

/// Constant scalar expression such as "sqrt(3)/6" or "-inf". Throws ParseError.
double EvaluateConstant(const std::string& text, int line = 0, int column_offset = 0);

}  // namespace asymp::io
