#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "asymp/bifunction_model.hpp"
#include "asymp/feasible_set.hpp"
#include "asymp/function_model.hpp"
#include "asymp/io/expr.hpp"
#include "asymp/point.hpp"

namespace asymp::io {

inline constexpr const char* kProblemHeader = "asymp-problem 1";

enum class TaskKind { kAnalyze, kCone, kSolveEP, kMinimize, kCheck };

std::string ToString(TaskKind kind);

struct SetDecl {
  std::string name;
  std::string source;  // canonical right-hand side
  std::vector<std::string> annotations;
  FeasibleSet set = FeasibleSet::Whole(1);
  int line = 0;
};

struct FunctionDecl {
  std::string name;
  std::string source;
  std::string domain;  // empty: whole space
  std::vector<std::string> annotations;
  std::shared_ptr<const FunctionModel> model;
  int line = 0;
};

struct BifunctionDecl {
  std::string name;
  std::string source;
  std::string domain;
  std::vector<std::string> annotations;
  std::shared_ptr<const BifunctionModel> model;
  int line = 0;
};

/// Task parameters. `params` keeps the file text for serialization; the typed
/// fields are filled from it during parsing.
struct TaskSpec {
  TaskKind kind = TaskKind::kAnalyze;
  std::vector<std::pair<std::string, std::string>> params;

  std::string function;
  std::string bifunction;
  std::string set;
  std::optional<double> resolution;
  std::vector<double> stages;
  std::optional<double> escape_ratio;
  std::size_t directions = 16;
  std::uint64_t seed = 1;
  std::optional<double> eps;
  std::optional<double> tolerance;
  std::optional<std::vector<double>> levels;  // lo, hi, step
  std::optional<Point> direction;
  std::optional<Point> base;
  std::vector<std::string> classes;
  double design_resolution = 0.5;
  double design_radius = 1.0;
  std::size_t tuple_length = 4;
  std::size_t subset_size = 3;
  double baseline_radius = 4.0;
  std::size_t budget = 0;  // 0: module default
};

struct Problem {
  std::string name;
  std::size_t dim = 1;
  std::string norm_text = "2";
  Norm norm;
  std::vector<SetDecl> sets;
  std::vector<FunctionDecl> functions;
  std::vector<BifunctionDecl> bifunctions;
  TaskSpec task;
  /// Loader observations for the hypothesis ledger, e.g. a dropped radial
  /// declaration that failed its spot check.
  std::vector<std::string> notes;

  const SetDecl* FindSet(const std::string& name) const;
  const FunctionDecl* FindFunction(const std::string& name) const;
  const BifunctionDecl* FindBifunction(const std::string& name) const;
};

/// Throws ParseError carrying a diagnostic code, line and column.
Problem ParseProblem(const std::string& text);

/// Canonical text; ParseProblem(SerializeProblem(p)) reproduces p.
std::string SerializeProblem(const Problem& problem);

}  // namespace asymp::io
