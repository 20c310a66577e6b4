// Command-line front end: one subcommand per task kind, plus `run` (task as
// declared in the file) and `fmt` (canonical re-serialization).
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "asymp/io/diagnostic.hpp"
#include "asymp/io/problem.hpp"
#include "asymp/io/report.hpp"

namespace {

using namespace asymp::io;

struct Args {
  std::string file;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> budget;
  std::optional<double> tolerance;
  std::string output;
  std::string table;
  std::string function;
  std::string bifunction;
  std::string set;
};

bool WriteFile(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

int Emit(const Args& a, const std::string& text) {
  if (a.output.empty() || a.output == "-") {
    std::cout << text;
    return 0;
  }
  if (!WriteFile(a.output, text)) {
    std::cerr << "asymp: cannot write " << a.output << "\n";
    return kExitFailure;
  }
  return 0;
}

void Override(Problem& p, const Args& a) {
  auto set_param = [&](const std::string& key, const std::string& value) {
    for (auto& [k, v] : p.task.params) {
      if (k == key) {
        v = value;
        return;
      }
    }
    p.task.params.emplace_back(key, value);
  };
  auto fail = [](const std::string& what, const std::string& name) {
    throw ParseError(Diagnostic{diag::kUndeclared, 0, 0, "undeclared " + what + " '" + name + "'", {}});
  };
  if (!a.function.empty()) {
    if (p.FindFunction(a.function) == nullptr) fail("function", a.function);
    p.task.function = a.function;
    set_param("function", a.function);
  }
  if (!a.bifunction.empty()) {
    if (p.FindBifunction(a.bifunction) == nullptr) fail("bifunction", a.bifunction);
    p.task.bifunction = a.bifunction;
    set_param("bifunction", a.bifunction);
  }
  if (!a.set.empty()) {
    if (p.FindSet(a.set) == nullptr) fail("set", a.set);
    p.task.set = a.set;
    set_param("set", a.set);
  }
}

void RequireNames(const Problem& p) {
  auto need = [&](const std::string& v, const char* key) {
    if (v.empty()) {
      throw ParseError(Diagnostic{diag::kTaskParam, 0, 0,
                                  "task '" + ToString(p.task.kind) + "' needs '" + key + "' (file or --" + key + ")",
                                  {key}});
    }
  };
  switch (p.task.kind) {
    case TaskKind::kAnalyze:
    case TaskKind::kMinimize: need(p.task.function, "function"); break;
    case TaskKind::kCone: need(p.task.set, "set"); break;
    case TaskKind::kSolveEP:
    case TaskKind::kCheck: need(p.task.bifunction, "bifunction"); break;
  }
}

int Execute(const Args& a, std::optional<TaskKind> kind, bool format_only) {
  std::ifstream in(a.file, std::ios::binary);
  if (!in) {
    std::cerr << "asymp: cannot read " << a.file << "\n";
    return kExitFailure;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  Problem problem;
  try {
    problem = ParseProblem(buffer.str());
    if (format_only) return Emit(a, SerializeProblem(problem));
    if (kind) problem.task.kind = *kind;
    Override(problem, a);
    RequireNames(problem);
  } catch (const ParseError& e) {
    std::cerr << a.file << ": " << e.diagnostic().Format() << "\n";
    if (!format_only) Emit(a, RenderReport(ParseFailureReport(e)));
    return kExitParseError;
  }
  const RunOutcome outcome = RunTask(problem, RunOverrides{a.seed, a.budget, a.tolerance});
  if (const int rc = Emit(a, RenderReport(outcome.report)); rc != 0) return rc;
  if (!a.table.empty() && !WriteFile(a.table, outcome.table)) {
    std::cerr << "asymp: cannot write " << a.table << "\n";
    return kExitFailure;
  }
  return outcome.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Asymptotic analysis, equilibrium and minimization toolkit"};
  app.require_subcommand(1);
  Args args;
  int rc = 0;

  auto add = [&](const char* name, const char* help, std::optional<TaskKind> kind, bool format_only) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", args.file, "Problem file")->required();
    sub->add_option("--output,-o", args.output, "Report path (default stdout)");
    if (!format_only) {
      sub->add_option("--seed", args.seed, "Override the task seed");
      sub->add_option("--budget", args.budget, "Stage budget (solve-ep, minimize) or tuple budget (check)");
      sub->add_option("--tolerance", args.tolerance, "Override the certificate / check tolerance");
      sub->add_option("--table", args.table, "Write the coordinate table (CSV) here");
      sub->add_option("--function", args.function, "Function to use");
      sub->add_option("--bifunction", args.bifunction, "Bifunction to use");
      sub->add_option("--set", args.set, "Set to use");
    }
    sub->callback([&, kind, format_only] { rc = Execute(args, kind, format_only); });
  };
  add("analyze", "sigma_g and classic asymptotic values over directions", TaskKind::kAnalyze, false);
  add("cone", "Recession cone membership", TaskKind::kCone, false);
  add("solve-ep", "Equilibrium problem by truncation with recession certificates", TaskKind::kSolveEP, false);
  add("minimize", "Minimization through the equilibrium reduction", TaskKind::kMinimize, false);
  add("check", "Sampled bifunction class checks", TaskKind::kCheck, false);
  add("run", "Run the task declared in the file", std::nullopt, false);
  add("fmt", "Print the canonical form of a problem file", std::nullopt, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParseError;
  }
  return rc;
}
