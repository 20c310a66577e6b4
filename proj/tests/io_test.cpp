#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "asymp/io/diagnostic.hpp"
#include "asymp/io/expr.hpp"
#include "asymp/io/problem.hpp"
#include "asymp/io/report.hpp"

using namespace asymp;
using namespace asymp::io;

namespace {

ExprScope Scope(std::size_t dim, bool allow_y = false) {
  ExprScope s;
  s.dim = dim;
  s.allow_y = allow_y;
  s.sets = std::make_shared<std::vector<FeasibleSet>>();
  return s;
}

double Eval(const std::string& text, std::vector<double> x, std::vector<double> y = {}) {
  const auto e = CompiledExpr::Compile(text, Scope(x.size(), !y.empty()));
  return e.Scalar(x, y);
}

Diagnostic DiagnosticOf(const std::string& text, std::size_t dim = 2) {
  try {
    CompiledExpr::Compile(text, Scope(dim));
  } catch (const ParseError& e) {
    return e.diagnostic();
  }
  FAIL("expected a parse error for " << text);
  return {};
}

std::string ReadFile(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::filesystem::path> CorpusFiles() {
  std::vector<std::filesystem::path> out;
  for (const auto& e : std::filesystem::directory_iterator(ASYMP_CORPUS_DIR)) {
    if (e.path().extension() == ".asymp") out.push_back(e.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string CodeOf(const std::string& text) {
  try {
    ParseProblem(text);
  } catch (const ParseError& e) {
    return e.diagnostic().code;
  }
  return "none";
}

}  // namespace

TEST_CASE("expression precedence and associativity") {
  CHECK(Eval("1 + 2 * 3", {0.0}) == 7.0);
  CHECK(Eval("2 ^ 3 ^ 2", {0.0}) == 512.0);
  CHECK(Eval("-2 ^ 2", {0.0}) == -4.0);
  CHECK(Eval("2 ^ -1", {0.0}) == 0.5);
  CHECK(Eval("(1 + 2) * 3", {0.0}) == 9.0);
  CHECK(Eval("8 / 4 / 2", {0.0}) == 1.0);
  CHECK(Eval("1 - 2 - 3", {0.0}) == -4.0);
}

TEST_CASE("expression functions and vectors") {
  CHECK(Eval("norm(x)", {3.0, 4.0}) == 5.0);
  CHECK(Eval("norm(x, 1)", {3.0, -4.0}) == 7.0);
  CHECK(Eval("norm(x, inf)", {3.0, -4.0}) == 4.0);
  CHECK(Eval("dot(x, [1, 2])", {3.0, 4.0}) == 11.0);
  CHECK(Eval("norm(2 * x - [1, 1])", {1.0, 1.0}) == doctest::Approx(std::sqrt(2.0)));
  CHECK(Eval("max(x1, x2, 7)", {3.0, 4.0}) == 7.0);
  CHECK(Eval("min(x1, x2)", {3.0, 4.0}) == 3.0);
  CHECK(Eval("arctan(x1) + atan(x2)", {1.0, 0.0}) == doctest::Approx(std::numbers::pi / 4));
  CHECK(Eval("abs(x1) + sqrt(x2) + exp(0) + log(1)", {-2.0, 9.0}) == 6.0);
  CHECK(Eval("pi", {0.0}) == std::numbers::pi);
  CHECK(Eval("y1 - x1", {1.0}, {3.0}) == 2.0);
}

TEST_CASE("piecewise takes the first matching branch") {
  const std::string text = "piecewise(x1 <= 0, -1, x1 <= 1, 5, x1 > 0, 7, 9)";
  CHECK(Eval(text, {-1.0}) == -1.0);
  CHECK(Eval(text, {0.5}) == 5.0);
  CHECK(Eval(text, {2.0}) == 7.0);
  CHECK(Eval("piecewise(x1 > 0 and x1 < 1, 1, not x1 < 5 or x1 == 3, 2, 0)", {3.0}) == 2.0);
}

TEST_CASE("exact constants in breakpoints") {
  CHECK(EvaluateConstant("sqrt(3)/6") == std::sqrt(3.0) / 6);
  CHECK(EvaluateConstant("-inf") == -HUGE_VAL);
  CHECK(EvaluateConstant("1e-3") == 0.001);
}

TEST_CASE("in() consults the declared set") {
  ExprScope s = Scope(2);
  s.sets->push_back(FeasibleSet::Box({0.0, 0.0}, {1.0, 2.0}));
  s.set_index["C"] = 0;
  const auto e = CompiledExpr::Compile("piecewise(in(x, C), 0, -1)", s);
  CHECK(e.Scalar(std::vector<double>{0.5, 1.5}) == 0.0);
  CHECK(e.Scalar(std::vector<double>{1.5, 1.5}) == -1.0);
}

TEST_CASE("canonical printing round-trips") {
  const std::vector<std::string> texts = {
      "1 + 2 * 3",       "(1 + 2) * 3",         "2 ^ 3 ^ 2",          "(2 ^ 3) ^ 2",
      "-2 ^ 2",          "(-2) ^ 2",            "1 - (2 - 3)",        "x1 / (x2 / 3)",
      "-(x1 + x2)",      "norm(x - [1, 0.1])",  "not (x1 < 0 or x2 > 0) and x1 == 0",
      "piecewise(x1 <= 0, -arctan(x1), x1 <= sqrt(3)/6, x1, x1 < sqrt(3)/3, -x1 + sqrt(3)/3, arctan(x1))",
      "max(x1, 0.1, 1e-9) * pi + inf",
  };
  for (const auto& t : texts) {
    const auto a = CompiledExpr::Compile(t, Scope(2));
    const auto b = CompiledExpr::Compile(a.ToString(), Scope(2));
    CHECK_MESSAGE(a.ToString() == b.ToString(), t);
    const std::vector<double> x{0.3, -0.7};
    const double va = a.type() == ValueType::kScalar ? a.Scalar(x) : a.Bool(x);
    const double vb = b.type() == ValueType::kScalar ? b.Scalar(x) : b.Bool(x);
    CHECK(va == vb);
  }
  CHECK(CompiledExpr::Compile("(1+2)*3", Scope(1)).ToString() == "(1 + 2) * 3");
  CHECK(CompiledExpr::Compile("((x1))", Scope(1)).ToString() == "x1");
}

TEST_CASE("expression diagnostics carry code and column") {
  const auto unclosed = DiagnosticOf("norm(x");
  CHECK(std::string(unclosed.code) == diag::kUnclosedParen);
  CHECK(unclosed.column == 5);
  CHECK(std::string(DiagnosticOf("1 + * 2").code) == diag::kUnexpectedToken);
  CHECK(std::string(DiagnosticOf("foo(x1)").code) == diag::kUnknownIdentifier);
  CHECK(std::string(DiagnosticOf("z").code) == diag::kUnknownIdentifier);
  CHECK(std::string(DiagnosticOf("y1").code) == diag::kUnknownIdentifier);
  CHECK(std::string(DiagnosticOf("arctan(x1, x2)").code) == diag::kArity);
  CHECK(std::string(DiagnosticOf("min(x1)").code) == diag::kArity);
  CHECK(std::string(DiagnosticOf("x + 1").code) == diag::kType);
  CHECK(std::string(DiagnosticOf("x1 < 0 + 1 < 2").code) == diag::kUnexpectedToken);
  CHECK(std::string(DiagnosticOf("x3").code) == diag::kDimension);
  CHECK(std::string(DiagnosticOf("dot(x, [1, 2, 3])").code) == diag::kDimension);
  CHECK(std::string(DiagnosticOf("piecewise(x1 > 0, 1)").code) == diag::kPiecewise);
  CHECK(std::string(DiagnosticOf("piecewise(1, 1, 2)").code) == diag::kPiecewise);
  CHECK(std::string(DiagnosticOf("in(x, Nowhere)").code) == diag::kUndeclared);
  CHECK(DiagnosticOf("x1 + $").column == 6);
}

TEST_CASE("every corpus file parses and round-trips") {
  const auto files = CorpusFiles();
  REQUIRE(files.size() >= 10);
  for (const auto& f : files) {
    CAPTURE(f);
    const Problem a = ParseProblem(ReadFile(f));
    const std::string sa = SerializeProblem(a);
    const Problem b = ParseProblem(sa);
    CHECK(SerializeProblem(b) == sa);
    CHECK(a.dim == b.dim);
    CHECK(a.sets.size() == b.sets.size());
    CHECK(a.functions.size() == b.functions.size());
    CHECK(a.bifunctions.size() == b.bifunctions.size());
    CHECK(a.task.kind == b.task.kind);
    CHECK(a.task.params == b.task.params);
    for (std::size_t i = 0; i < a.functions.size(); ++i) CHECK(a.functions[i].source == b.functions[i].source);
  }
}

TEST_CASE("malformed corpus yields stable diagnostic codes") {
  const std::filesystem::path dir = std::filesystem::path(ASYMP_CORPUS_DIR) / "malformed";
  std::ifstream manifest(dir / "EXPECTED");
  std::string file, code;
  int count = 0;
  while (manifest >> file >> code) {
    if (file == "#") {
      std::getline(manifest, file);
      continue;
    }
    const std::string text = ReadFile(dir / file);
    CHECK_MESSAGE(CodeOf(text) == code, file);
    CHECK(CodeOf(text) == CodeOf(text));
    ++count;
  }
  CHECK(count >= 16);
}

TEST_CASE("model building recognizes special forms") {
  const Problem p = ParseProblem(R"(asymp-problem 1
[problem]
dimension = 2
[sets]
K = box([-1, -1], [1, 1])
[functions]
c = 2 + 1
g = norm(x)^2
g.annotations = quasi_convex, radial
h = x1
h.annotations = radial
[bifunctions]
k = 2
k.domain = K
y_only = y1 + y2
diff = difference(g)
general = y1 - x1
general.annotations = pseudomonotone
[task]
kind = check
bifunction = general
)");
  CHECK(std::holds_alternative<ConstantForm>(p.FindFunction("c")->model->form()));
  CHECK(p.FindFunction("g")->model->traits().radial);
  CHECK_FALSE(p.FindFunction("h")->model->traits().radial);
  REQUIRE(p.notes.size() == 1);
  CHECK(std::holds_alternative<ConstantBifunction>(p.FindBifunction("k")->model->form()));
  CHECK(std::holds_alternative<YOnlyBifunction>(p.FindBifunction("y_only")->model->form()));
  CHECK(std::holds_alternative<DifferenceBifunction>(p.FindBifunction("diff")->model->form()));
  CHECK(p.FindBifunction("general")->model->traits().pseudomonotone);
  CHECK_FALSE(p.FindBifunction("k")->model->feasible().is_whole());
  const auto& g = *p.FindFunction("g")->model;
  CHECK(g.Evaluate(Point{3.0, 4.0}) == ExtendedReal(25.0));
}

TEST_CASE("where() sets take their flags from annotations") {
  const Problem p = ParseProblem(R"(asymp-problem 1
[problem]
dimension = 2
[sets]
C = box([0, 0], [1, 2])
D = where(in(x, C) or x1 >= 5)
E = where(x1 + x2 <= 1)
E.annotations = convex, closed
F = intersect(C, E)
[task]
kind = cone
set = F
)");
  const auto& d = p.FindSet("D")->set;
  CHECK(d.Contains(Point{0.5, 0.5}));
  CHECK(d.Contains(Point{6.0, -9.0}));
  CHECK_FALSE(d.Contains(Point{2.0, 0.0}));
  CHECK_FALSE(d.convex());
  CHECK(p.FindSet("E")->set.convex());
  CHECK(p.FindSet("F")->set.Contains(Point{0.5, 0.5}));
  CHECK_FALSE(p.FindSet("F")->set.Contains(Point{1.0, 1.0}));
}

TEST_CASE("file-level diagnostics") {
  CHECK(CodeOf("") == diag::kHeader);
  CHECK(CodeOf("asymp-problem 2\n[problem]\ndimension = 1\n") == diag::kHeader);
  CHECK(CodeOf("asymp-problem 1\n[problem]\n[problem]\n") == diag::kDuplicate);
  CHECK(CodeOf("asymp-problem 1\nx = 1\n") == diag::kMalformedLine);
  CHECK(CodeOf("asymp-problem 1\n[problem]\ndimension = 1\n[functions]\nf = x1\nf.colour = red\n[task]\nkind = analyze\n"
               "function = f\n") == diag::kMalformedLine);
  CHECK(CodeOf("asymp-problem 1\n[problem]\ndimension = 1\n[functions]\nf.domain = K\n[task]\nkind = analyze\n") ==
        diag::kUndeclared);
  CHECK(CodeOf("asymp-problem 1\n[problem]\ndimension = 1\n[task]\nkind = analyze\nfunction = g\n") ==
        diag::kUndeclared);
  CHECK(CodeOf("asymp-problem 1\n[problem]\ndimension = 1\n[task]\nkind = solve\n") == diag::kTaskParam);
  CHECK(CodeOf("asymp-problem 1\n[problem]\ndimension = 1\n[task]\nkind = analyze\n") == diag::kTaskParam);
  CHECK(CodeOf("asymp-problem 1\n[problem]\ndimension = 1\n[task]\nfunction = f\n") != "none");
  CHECK(CodeOf("asymp-problem 1\n[problem]\ndimension = 1\n[sets]\nA = union(B)\n[task]\nkind = cone\nset = A\n") ==
        diag::kUndeclared);
  CHECK(CodeOf("asymp-problem 1\n[problem]\ndimension = 1\n[sets]\nA = polyhedron([1])\n[task]\nkind = cone\nset = A\n") ==
        diag::kBadSet);
}

TEST_CASE("diagnostic columns point into the line") {
  try {
    ParseProblem("asymp-problem 1\n[problem]\ndimension = 2\n[functions]\nf   =   norm(x\n[task]\nkind = analyze\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.diagnostic().line == 5);
    CHECK(e.diagnostic().column == 13);
    CHECK(e.diagnostic().Format().find("E102 line 5 col 13") == 0);
  }
}

TEST_CASE("reports are reproducible apart from wall clock") {
  const Problem p = ParseProblem(ReadFile(std::filesystem::path(ASYMP_CORPUS_DIR) / "box_gate_ep.asymp"));
  auto a = RunTask(p);
  auto b = RunTask(p);
  CHECK(a.exit_code == kExitSuccess);
  a.report.erase("wall_clock_seconds");
  b.report.erase("wall_clock_seconds");
  CHECK(RenderReport(a.report) == RenderReport(b.report));
  CHECK(a.table == b.table);
  const auto& verdict = a.report["result"]["pipeline"]["verdict"];
  CHECK(verdict["kind"] == "solution");
  CHECK(verdict["sample"].size() == 45);
  CHECK(a.table.substr(0, 6) == "x1,x2\n");
}

TEST_CASE("report exit codes") {
  const auto run = [](const std::string& name) {
    return RunTask(ParseProblem(ReadFile(std::filesystem::path(ASYMP_CORPUS_DIR) / name)));
  };
  const auto y = run("y_identity_ep.asymp");
  CHECK(y.exit_code == kExitHypothesisViolation);
  CHECK(y.report["result"]["error"]["code"] == "empty_stage_solution");
  const auto arctan = run("arctan_norm_analyze.asymp");
  CHECK(arctan.exit_code == kExitSuccess);
  CHECK(arctan.report["result"]["boundedness"]["verdict"] == "all_finite");
  const auto norm = run("norm_analyze.asymp");
  CHECK(norm.report["result"]["boundedness"]["verdict"] == "found_infinite");
  CHECK(norm.report["result"]["directions"][0]["sigma_g_sublevel"]["value"] == "+inf");
}

TEST_CASE("overrides change the seed and budget") {
  const Problem p = ParseProblem(ReadFile(std::filesystem::path(ASYMP_CORPUS_DIR) / "constant_cyclic_check.asymp"));
  const auto tight = RunTask(p, RunOverrides{std::uint64_t{5}, std::size_t{10}, std::nullopt});
  CHECK(tight.report["seed"] == 5);
  CHECK(tight.exit_code == kExitInconclusive);
  CHECK(tight.report["result"]["checks"][0]["partial"] == true);
}
