#include "asymp/io/problem.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <sstream>

#include "asymp/error.hpp"
#include "asymp/io/diagnostic.hpp"

namespace asymp::io {

std::string ToString(TaskKind kind) {
  switch (kind) {
    case TaskKind::kAnalyze: return "analyze";
    case TaskKind::kCone: return "cone";
    case TaskKind::kSolveEP: return "solve-ep";
    case TaskKind::kMinimize: return "minimize";
    case TaskKind::kCheck: return "check";
  }
  return "?";
}

namespace {

struct Entry {
  std::string section;
  std::string name;
  std::string attr;  // empty for a declaration
  std::string value;
  int line = 0;
  int name_col = 0;   // 1-based
  int value_col = 0;  // 0-based offset of the value within the line
};

[[noreturn]] void Throw(const char* code, int line, int column, std::string message,
                        std::vector<std::string> expected = {}) {
  throw ParseError(Diagnostic{code, line, column, std::move(message), std::move(expected)});
}

std::pair<std::size_t, std::size_t> TrimBounds(const std::string& s, std::size_t lo, std::size_t hi) {
  while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
  while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
  return {lo, hi};
}

std::string Trim(const std::string& s) {
  const auto [lo, hi] = TrimBounds(s, 0, s.size());
  return s.substr(lo, hi - lo);
}

bool IsIdentifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

struct Piece {
  std::string text;
  int offset = 0;  // 0-based column offset within the line
};

// Splits on commas outside parentheses and brackets.
std::vector<Piece> SplitTopLevel(const std::string& text, int offset) {
  std::vector<Piece> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    const char c = i < text.size() ? text[i] : ',';
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (c == ',' && depth == 0) {
      const auto [lo, hi] = TrimBounds(text, start, i);
      out.push_back({text.substr(lo, hi - lo), offset + static_cast<int>(lo)});
      start = i + 1;
    }
  }
  if (out.size() == 1 && out[0].text.empty()) out.clear();
  return out;
}

// "name(args)" split into the name and the argument text; nullopt when the
// text is not a call.
std::optional<std::pair<std::string, Piece>> SplitCall(const Piece& p) {
  const auto open = p.text.find('(');
  if (open == std::string::npos || p.text.back() != ')') return std::nullopt;
  const std::string name = Trim(p.text.substr(0, open));
  if (!IsIdentifier(name)) return std::nullopt;
  return std::make_pair(name, Piece{p.text.substr(open + 1, p.text.size() - open - 2), p.offset + static_cast<int>(open) + 1});
}

double Constant(const Piece& p, int line) { return EvaluateConstant(p.text, line, p.offset); }

std::vector<double> ConstVector(const Piece& p, int line, std::size_t dim, const char* code, const std::string& what) {
  if (p.text.size() < 2 || p.text.front() != '[' || p.text.back() != ']') {
    Throw(code, line, p.offset + 1, what + " must be a vector literal [..]");
  }
  std::vector<double> v;
  for (const auto& entry : SplitTopLevel(p.text.substr(1, p.text.size() - 2), p.offset + 1)) {
    v.push_back(Constant(entry, line));
  }
  if (v.size() != dim) {
    Throw(diag::kDimension, line, p.offset + 1,
          what + " has " + std::to_string(v.size()) + " entries, dimension is " + std::to_string(dim));
  }
  return v;
}

std::string VectorText(const std::vector<double>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + FormatNumber(v[i]);
  return s + "]";
}

std::string JoinNames(const std::vector<std::string>& names) {
  std::string s;
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + names[i];
  return s;
}

std::vector<std::string> ParseAnnotations(const Entry& e, const std::set<std::string>& allowed) {
  std::vector<std::string> out;
  for (const auto& piece : SplitTopLevel(e.value, e.value_col)) {
    if (!allowed.contains(piece.text)) {
      std::vector<std::string> expected(allowed.begin(), allowed.end());
      Throw(diag::kAnnotation, e.line, piece.offset + 1, "unknown annotation '" + piece.text + "'", expected);
    }
    if (std::find(out.begin(), out.end(), piece.text) == out.end()) out.push_back(piece.text);
  }
  return out;
}

bool Has(const std::vector<std::string>& list, const char* name) {
  return std::find(list.begin(), list.end(), name) != list.end();
}

class Loader {
 public:
  explicit Loader(const std::string& text) { Lex(text); }

  Problem Build() {
    BuildProblemSection();
    BuildSets();
    BuildFunctions();
    BuildBifunctions();
    BuildTask();
    return std::move(problem_);
  }

 private:
  void Lex(const std::string& text) {
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    bool header = false;
    std::string section;
    std::set<std::string> seen_sections;
    static const std::set<std::string> kSections = {"problem", "sets", "functions", "bifunctions", "task"};
    while (std::getline(in, raw)) {
      ++line;
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const auto hash = raw.find('#');
      const std::string body = hash == std::string::npos ? raw : raw.substr(0, hash);
      const auto [lo, hi] = TrimBounds(body, 0, body.size());
      if (lo == hi) continue;
      const std::string trimmed = body.substr(lo, hi - lo);
      const int col = static_cast<int>(lo) + 1;
      if (!header) {
        std::istringstream words(trimmed);
        std::string magic, version, extra;
        words >> magic >> version >> extra;
        if (magic != "asymp-problem") Throw(diag::kHeader, line, col, "missing header line", {kProblemHeader});
        if (version != "1" || !extra.empty()) {
          Throw(diag::kHeader, line, col, "unsupported format version '" + version + "'", {kProblemHeader});
        }
        header = true;
        continue;
      }
      if (trimmed.front() == '[') {
        if (trimmed.back() != ']') Throw(diag::kMalformedLine, line, col, "malformed section header", {"']'"});
        section = Trim(trimmed.substr(1, trimmed.size() - 2));
        if (!kSections.contains(section)) {
          Throw(diag::kUnknownSection, line, col, "unknown section [" + section + "]",
                {"[problem]", "[sets]", "[functions]", "[bifunctions]", "[task]"});
        }
        if (!seen_sections.insert(section).second) {
          Throw(diag::kDuplicate, line, col, "section [" + section + "] appears twice");
        }
        sections_.insert(section);
        continue;
      }
      if (section.empty()) Throw(diag::kMalformedLine, line, col, "entry before any section", {"[section]"});
      const auto eq = body.find('=');
      if (eq == std::string::npos) Throw(diag::kMalformedLine, line, col, "expected 'name = value'", {"'='"});
      const std::string key = Trim(body.substr(0, eq));
      const auto [vlo, vhi] = TrimBounds(body, eq + 1, body.size());
      Entry e;
      e.section = section;
      e.line = line;
      e.name_col = col;
      e.value = body.substr(vlo, vhi - vlo);
      e.value_col = static_cast<int>(vlo);
      const auto dot = key.find('.');
      e.name = dot == std::string::npos ? key : key.substr(0, dot);
      if (dot != std::string::npos) e.attr = key.substr(dot + 1);
      if (!IsIdentifier(e.name) || (dot != std::string::npos && !IsIdentifier(e.attr))) {
        Throw(diag::kMalformedLine, line, col, "malformed key '" + key + "'", {"name", "name.attribute"});
      }
      if (e.value.empty()) Throw(diag::kMalformedLine, line, static_cast<int>(eq) + 2, "missing value after '='");
      const std::string full = section + ":" + key;
      if (!keys_.insert(full).second) Throw(diag::kDuplicate, line, col, "'" + key + "' is declared twice");
      entries_.push_back(std::move(e));
    }
    if (!header) Throw(diag::kHeader, line > 0 ? line : 1, 1, "missing header line", {kProblemHeader});
  }

  std::vector<const Entry*> Section(const std::string& name) const {
    std::vector<const Entry*> out;
    for (const auto& e : entries_) {
      if (e.section == name) out.push_back(&e);
    }
    return out;
  }

  const Entry* Attribute(const std::string& section, const std::string& name, const std::string& attr) const {
    for (const auto& e : entries_) {
      if (e.section == section && e.name == name && e.attr == attr) return &e;
    }
    return nullptr;
  }

  void CheckAttributes(const std::string& section, const std::set<std::string>& allowed) const {
    for (const Entry* e : Section(section)) {
      if (e->attr.empty()) continue;
      if (!allowed.contains(e->attr)) {
        Throw(diag::kMalformedLine, e->line, e->name_col, "unknown attribute '" + e->attr + "'",
              std::vector<std::string>(allowed.begin(), allowed.end()));
      }
      if (Attribute(section, e->name, "") == nullptr) {
        Throw(diag::kUndeclared, e->line, e->name_col, "attribute for undeclared '" + e->name + "'");
      }
    }
  }

  void BuildProblemSection() {
    bool have_dim = false;
    for (const Entry* e : Section("problem")) {
      if (!e->attr.empty()) Throw(diag::kMalformedLine, e->line, e->name_col, "[problem] keys take no attribute");
      if (e->name == "dimension") {
        const double d = Constant({e->value, e->value_col}, e->line);
        if (!(d >= 1 && d <= 64 && d == std::floor(d))) {
          Throw(diag::kMalformedLine, e->line, e->value_col + 1, "dimension must be an integer in 1..64");
        }
        problem_.dim = static_cast<std::size_t>(d);
        have_dim = true;
      } else if (e->name == "norm") {
        if (e->value == "inf") {
          problem_.norm = Norm::Max();
          problem_.norm_text = "inf";
        } else {
          const double p = Constant({e->value, e->value_col}, e->line);
          if (std::isinf(p) && p > 0) {
            problem_.norm = Norm::Max();
            problem_.norm_text = "inf";
          } else if (p >= 1) {
            problem_.norm = Norm::P(p);
            problem_.norm_text = FormatNumber(p);
          } else {
            Throw(diag::kMalformedLine, e->line, e->value_col + 1, "norm must be 1, 2, inf or some p >= 1");
          }
        }
      } else if (e->name == "name") {
        problem_.name = e->value;
      } else {
        Throw(diag::kMalformedLine, e->line, e->name_col, "unknown [problem] key '" + e->name + "'",
              {"dimension", "norm", "name"});
      }
    }
    if (!have_dim) Throw(diag::kMalformedLine, 1, 1, "[problem] must declare 'dimension'", {"dimension"});
    table_ = std::make_shared<std::vector<FeasibleSet>>();
  }

  ExprScope Scope(bool allow_y) const {
    ExprScope scope;
    scope.dim = problem_.dim;
    scope.allow_x = true;
    scope.allow_y = allow_y;
    scope.norm = problem_.norm;
    scope.sets = table_;
    scope.set_index = set_index_;
    return scope;
  }

  const FeasibleSet& SetByName(const std::string& name, int line, int column) const {
    const auto it = set_index_.find(name);
    if (it == set_index_.end()) Throw(diag::kUndeclared, line, column, "undeclared set '" + name + "'");
    return (*table_)[it->second];
  }

  void BuildSets() {
    CheckAttributes("sets", {"annotations"});
    const std::size_t d = problem_.dim;
    for (const Entry* e : Section("sets")) {
      if (!e->attr.empty()) continue;
      SetDecl decl;
      decl.name = e->name;
      decl.line = e->line;
      if (const Entry* a = Attribute("sets", e->name, "annotations")) {
        decl.annotations = ParseAnnotations(*a, {"convex", "closed"});
      }
      const Piece rhs{e->value, e->value_col};
      const auto call = SplitCall(rhs);
      const std::string kind = call ? call->first : rhs.text;
      const auto args = call ? SplitTopLevel(call->second.text, call->second.offset) : std::vector<Piece>{};
      const int line = e->line;
      const int col = e->value_col + 1;
      auto arity = [&](bool ok, const char* shape) {
        if (!ok) Throw(diag::kBadSet, line, col, "'" + kind + "' expects " + shape);
      };
      if (kind == "whole" && !call) {
        decl.set = FeasibleSet::Whole(d);
        decl.source = "whole";
      } else if (kind == "box") {
        arity(args.size() == 2, "box([lo], [hi])");
        const auto lo = ConstVector(args[0], line, d, diag::kBadSet, "box lower corner");
        const auto hi = ConstVector(args[1], line, d, diag::kBadSet, "box upper corner");
        for (std::size_t i = 0; i < d; ++i) {
          if (!(lo[i] <= hi[i])) Throw(diag::kBadSet, line, args[0].offset + 1, "box has lo > hi");
        }
        decl.set = FeasibleSet::Box(lo, hi);
        decl.source = "box(" + VectorText(lo) + ", " + VectorText(hi) + ")";
      } else if (kind == "ball") {
        arity(args.size() == 2, "ball([center], radius)");
        const auto c = ConstVector(args[0], line, d, diag::kBadSet, "ball center");
        const double r = Constant(args[1], line);
        if (!(r >= 0 && std::isfinite(r))) Throw(diag::kBadSet, line, args[1].offset + 1, "ball radius must be finite and >= 0");
        decl.set = FeasibleSet::Ball(Point(c), r, problem_.norm);
        decl.source = "ball(" + VectorText(c) + ", " + FormatNumber(r) + ")";
      } else if (kind == "polyhedron") {
        arity(!args.empty() && args.size() % 2 == 0, "polyhedron([normal], offset, ...) pairs meaning <normal, x> <= offset");
        std::vector<Halfspace> hs;
        decl.source = "polyhedron(";
        for (std::size_t i = 0; i < args.size(); i += 2) {
          Halfspace h{ConstVector(args[i], line, d, diag::kBadSet, "halfspace normal"), Constant(args[i + 1], line)};
          if (!std::isfinite(h.offset)) Throw(diag::kBadSet, line, args[i + 1].offset + 1, "halfspace offset must be finite");
          decl.source += (i ? ", " : "") + VectorText(h.normal) + ", " + FormatNumber(h.offset);
          hs.push_back(std::move(h));
        }
        decl.source += ")";
        decl.set = FeasibleSet::Polyhedron(std::move(hs));
      } else if (kind == "union" || kind == "intersect") {
        arity(!args.empty(), "one or more set names");
        std::vector<FeasibleSet> parts;
        std::vector<std::string> names;
        for (const auto& a : args) {
          if (!IsIdentifier(a.text)) Throw(diag::kBadSet, line, a.offset + 1, "expected a set name", {"set name"});
          parts.push_back(SetByName(a.text, line, a.offset + 1));
          names.push_back(a.text);
        }
        decl.set = kind == "union" ? FeasibleSet::Union(std::move(parts)) : FeasibleSet::Intersection(std::move(parts));
        decl.source = kind + "(" + JoinNames(names) + ")";
      } else if (kind == "where") {
        arity(args.size() == 1, "where(condition)");
        const CompiledExpr cond = CompiledExpr::Compile(args[0].text, Scope(false), line, args[0].offset);
        if (cond.type() != ValueType::kBool) Throw(diag::kType, line, args[0].offset + 1, "where() needs a condition");
        decl.source = "where(" + cond.ToString() + ")";
        decl.set = FeasibleSet::Predicate(
            d, [cond](std::span<const double> x) { return cond.Bool(x); }, Has(decl.annotations, "convex"),
            Has(decl.annotations, "closed"), decl.name + " = " + decl.source);
      } else {
        Throw(diag::kBadSet, line, col, "unknown set kind '" + kind + "'",
              {"whole", "box", "ball", "polyhedron", "union", "intersect", "where"});
      }
      set_index_[decl.name] = table_->size();
      table_->push_back(decl.set);
      problem_.sets.push_back(std::move(decl));
    }
  }

  void BuildFunctions() {
    CheckAttributes("functions", {"annotations", "domain"});
    for (const Entry* e : Section("functions")) {
      if (!e->attr.empty()) continue;
      FunctionDecl decl;
      decl.name = e->name;
      decl.line = e->line;
      FeasibleSet domain = FeasibleSet::Whole(problem_.dim);
      if (const Entry* a = Attribute("functions", e->name, "domain")) {
        domain = SetByName(a->value, a->line, a->value_col + 1);
        decl.domain = a->value;
      }
      if (const Entry* a = Attribute("functions", e->name, "annotations")) {
        decl.annotations = ParseAnnotations(*a, {"quasi_convex", "lsc", "bounded_below", "radial"});
      }
      const CompiledExpr expr = CompiledExpr::Compile(e->value, Scope(false), e->line, e->value_col);
      if (expr.type() != ValueType::kScalar) {
        Throw(diag::kType, e->line, e->value_col + 1, "a function must be scalar-valued");
      }
      decl.source = expr.ToString();
      if (!expr.uses_x()) {
        decl.model = std::make_shared<FunctionModel>(FunctionModel::Constant(domain, expr.Scalar({})));
      } else {
        FunctionTraits traits;
        traits.quasi_convex = Has(decl.annotations, "quasi_convex");
        traits.lsc = Has(decl.annotations, "lsc");
        traits.bounded_below = Has(decl.annotations, "bounded_below");
        traits.radial = Has(decl.annotations, "radial");
        // NaN marks points outside the effective domain (log of a negative, 0/0).
        auto field = [expr](std::span<const double> x) {
          const double v = expr.Scalar(x);
          return std::isnan(v) ? ExtendedReal::PosInf() : ExtendedReal(v);
        };
        auto model = FunctionModel(problem_.dim, std::move(field), domain, traits, decl.source);
        if (traits.radial && !SpotCheckRadial(model, 64, 1)) {
          traits.radial = false;
          model = model.WithTraits(traits);
          problem_.notes.push_back("function '" + decl.name + "': radial declaration failed its spot check and was dropped");
        }
        decl.model = std::make_shared<FunctionModel>(std::move(model));
      }
      function_index_[decl.name] = problem_.functions.size();
      problem_.functions.push_back(std::move(decl));
    }
  }

  void BuildBifunctions() {
    CheckAttributes("bifunctions", {"annotations", "domain"});
    static const std::set<std::string> kTraits = {
        "pseudomonotone", "cyclically_anti_quasimonotone", "locally_dominated", "transfer_quasi_convex",
        "diag_nonnegative", "diag_zero", "y_quasi_convex", "x_quasi_concave", "transfer_usc"};
    for (const Entry* e : Section("bifunctions")) {
      if (!e->attr.empty()) continue;
      BifunctionDecl decl;
      decl.name = e->name;
      decl.line = e->line;
      FeasibleSet domain = FeasibleSet::Whole(problem_.dim);
      if (const Entry* a = Attribute("bifunctions", e->name, "domain")) {
        domain = SetByName(a->value, a->line, a->value_col + 1);
        decl.domain = a->value;
      }
      if (const Entry* a = Attribute("bifunctions", e->name, "annotations")) {
        decl.annotations = ParseAnnotations(*a, kTraits);
      }
      std::optional<BifunctionModel> model;
      const auto call = SplitCall({e->value, e->value_col});
      if (call && call->first == "difference") {
        const std::string f = Trim(call->second.text);
        const auto it = function_index_.find(f);
        if (it == function_index_.end()) {
          Throw(diag::kUndeclared, e->line, call->second.offset + 1, "undeclared function '" + f + "'");
        }
        decl.source = "difference(" + f + ")";
        model = BifunctionModel::Difference(*problem_.functions[it->second].model, domain);
      } else {
        const CompiledExpr expr = CompiledExpr::Compile(e->value, Scope(true), e->line, e->value_col);
        if (expr.type() != ValueType::kScalar) {
          Throw(diag::kType, e->line, e->value_col + 1, "a bifunction must be scalar-valued");
        }
        decl.source = expr.ToString();
        if (!expr.uses_x() && !expr.uses_y()) {
          model = BifunctionModel::Constant(domain, expr.Scalar({}));
        } else if (!expr.uses_x()) {
          model = BifunctionModel::YOnly(domain, [expr](std::span<const double> y) { return expr.Scalar({}, y); },
                                         decl.source);
        } else {
          model = BifunctionModel(
              problem_.dim, [expr](std::span<const double> x, std::span<const double> y) { return expr.Scalar(x, y); },
              domain, BifunctionTraits{}, decl.source);
        }
      }
      BifunctionTraits t = model->traits();
      const auto& a = decl.annotations;
      t.pseudomonotone = t.pseudomonotone || Has(a, "pseudomonotone");
      t.cyclically_anti_quasimonotone = t.cyclically_anti_quasimonotone || Has(a, "cyclically_anti_quasimonotone");
      t.locally_dominated = t.locally_dominated || Has(a, "locally_dominated");
      t.transfer_quasi_convex = t.transfer_quasi_convex || Has(a, "transfer_quasi_convex");
      t.diag_nonnegative = t.diag_nonnegative || Has(a, "diag_nonnegative");
      t.diag_zero = t.diag_zero || Has(a, "diag_zero");
      t.y_quasi_convex = t.y_quasi_convex || Has(a, "y_quasi_convex");
      t.x_quasi_concave = t.x_quasi_concave || Has(a, "x_quasi_concave");
      t.transfer_usc = t.transfer_usc || Has(a, "transfer_usc");
      decl.model = std::make_shared<BifunctionModel>(model->WithTraits(t));
      problem_.bifunctions.push_back(std::move(decl));
    }
  }

  void BuildTask() {
    if (!sections_.contains("task")) Throw(diag::kMissingTask, 1, 1, "no [task] section", {"[task]"});
    TaskSpec& task = problem_.task;
    bool have_kind = false;
    for (const Entry* e : Section("task")) {
      if (!e->attr.empty()) Throw(diag::kMalformedLine, e->line, e->name_col, "[task] keys take no attribute");
      if (e->name == "kind") {
        static const std::map<std::string, TaskKind> kKinds = {{"analyze", TaskKind::kAnalyze},
                                                               {"cone", TaskKind::kCone},
                                                               {"solve-ep", TaskKind::kSolveEP},
                                                               {"minimize", TaskKind::kMinimize},
                                                               {"check", TaskKind::kCheck}};
        const auto it = kKinds.find(e->value);
        if (it == kKinds.end()) {
          Throw(diag::kTaskParam, e->line, e->value_col + 1, "unknown task kind '" + e->value + "'",
                {"analyze", "cone", "solve-ep", "minimize", "check"});
        }
        task.kind = it->second;
        have_kind = true;
        continue;
      }
      ApplyParam(task, *e);
      task.params.emplace_back(e->name, e->value);
    }
    if (!have_kind) Throw(diag::kMissingTask, 1, 1, "[task] needs 'kind'", {"kind"});
    auto need = [&](const std::string& value, const char* key) {
      if (value.empty()) {
        Throw(diag::kTaskParam, 1, 1, "task '" + ToString(task.kind) + "' needs '" + key + "'", {key});
      }
    };
    switch (task.kind) {
      case TaskKind::kAnalyze:
      case TaskKind::kMinimize: need(task.function, "function"); break;
      case TaskKind::kCone: need(task.set, "set"); break;
      case TaskKind::kSolveEP:
      case TaskKind::kCheck: need(task.bifunction, "bifunction"); break;
    }
  }

  static std::uint64_t Unsigned(const Entry& e, std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(e.value.data(), e.value.data() + e.value.size(), v);
    if (ec != std::errc() || ptr != e.value.data() + e.value.size() || v < lo || v > hi) {
      Throw(diag::kTaskParam, e.line, e.value_col + 1,
            "'" + e.name + "' must be an integer in " + std::to_string(lo) + ".." + std::to_string(hi));
    }
    return v;
  }

  static double Positive(const Entry& e) {
    const double v = Constant({e.value, e.value_col}, e.line);
    if (!(v > 0 && std::isfinite(v))) Throw(diag::kTaskParam, e.line, e.value_col + 1, "'" + e.name + "' must be positive");
    return v;
  }

  std::vector<double> List(const Entry& e) const {
    std::vector<double> out;
    for (const auto& p : SplitTopLevel(e.value, e.value_col)) out.push_back(Constant(p, e.line));
    return out;
  }

  void ApplyParam(TaskSpec& task, const Entry& e) {
    const std::string& k = e.name;
    const int vcol = e.value_col + 1;
    auto name_ref = [&](bool declared) {
      if (!declared) Throw(diag::kUndeclared, e.line, vcol, "undeclared name '" + e.value + "'");
      return e.value;
    };
    if (k == "function") {
      task.function = name_ref(function_index_.contains(e.value));
    } else if (k == "bifunction") {
      task.bifunction = name_ref(problem_.FindBifunction(e.value) != nullptr);
    } else if (k == "set") {
      task.set = name_ref(set_index_.contains(e.value));
    } else if (k == "resolution") {
      task.resolution = Positive(e);
    } else if (k == "stages") {
      task.stages = List(e);
      if (task.stages.empty()) Throw(diag::kTaskParam, e.line, vcol, "'stages' needs at least one radius");
      for (std::size_t i = 0; i < task.stages.size(); ++i) {
        if (!(task.stages[i] > 0) || (i > 0 && !(task.stages[i] > task.stages[i - 1]))) {
          Throw(diag::kTaskParam, e.line, vcol, "'stages' must be positive and strictly increasing");
        }
      }
    } else if (k == "escape_ratio") {
      task.escape_ratio = Positive(e);
      if (*task.escape_ratio >= 1) Throw(diag::kTaskParam, e.line, vcol, "'escape_ratio' must be in (0, 1)");
    } else if (k == "directions") {
      task.directions = Unsigned(e, 1, 100000);
    } else if (k == "seed") {
      task.seed = Unsigned(e, 0, UINT64_MAX);
    } else if (k == "eps") {
      task.eps = Constant({e.value, e.value_col}, e.line);
      if (!(*task.eps >= 0 && std::isfinite(*task.eps))) Throw(diag::kTaskParam, e.line, vcol, "'eps' must be >= 0");
    } else if (k == "tolerance") {
      task.tolerance = Constant({e.value, e.value_col}, e.line);
      if (!(*task.tolerance >= 0 && std::isfinite(*task.tolerance))) {
        Throw(diag::kTaskParam, e.line, vcol, "'tolerance' must be >= 0");
      }
    } else if (k == "levels") {
      const auto v = List(e);
      if (v.size() != 3 || !(v[0] < v[1]) || !(v[2] > 0) || !std::isfinite(v[0]) || !std::isfinite(v[1])) {
        Throw(diag::kTaskParam, e.line, vcol, "'levels' is 'lo, hi, step' with lo < hi and step > 0");
      }
      task.levels = v;
    } else if (k == "direction" || k == "base") {
      const Point p(ConstVector({e.value, e.value_col}, e.line, problem_.dim, diag::kTaskParam, "'" + k + "'"));
      (k == "direction" ? task.direction : task.base) = p;
    } else if (k == "classes") {
      static const std::set<std::string> kClasses = {"pseudomonotone", "cyclic", "locally_dominated",
                                                     "transfer_quasi_convex", "k_sigma"};
      for (const auto& p : SplitTopLevel(e.value, e.value_col)) {
        if (!kClasses.contains(p.text)) {
          Throw(diag::kTaskParam, e.line, p.offset + 1, "unknown class '" + p.text + "'",
                std::vector<std::string>(kClasses.begin(), kClasses.end()));
        }
        task.classes.push_back(p.text);
      }
    } else if (k == "design_resolution") {
      task.design_resolution = Positive(e);
    } else if (k == "design_radius") {
      task.design_radius = Positive(e);
    } else if (k == "tuple_length") {
      task.tuple_length = Unsigned(e, 2, 8);
    } else if (k == "subset_size") {
      task.subset_size = Unsigned(e, 1, 6);
    } else if (k == "baseline_radius") {
      task.baseline_radius = Positive(e);
    } else if (k == "budget") {
      task.budget = Unsigned(e, 1, UINT64_MAX);
    } else {
      Throw(diag::kTaskParam, e.line, e.name_col, "unknown task parameter '" + k + "'",
            {"function", "bifunction", "set", "resolution", "stages", "escape_ratio", "directions", "seed", "eps",
             "tolerance", "levels", "direction", "base", "classes", "design_resolution", "design_radius",
             "tuple_length", "subset_size", "baseline_radius", "budget"});
    }
  }

  std::vector<Entry> entries_;
  std::set<std::string> keys_;
  std::set<std::string> sections_;
  Problem problem_;
  std::shared_ptr<std::vector<FeasibleSet>> table_;
  std::map<std::string, std::size_t> set_index_;
  std::map<std::string, std::size_t> function_index_;
};

}  // namespace

const SetDecl* Problem::FindSet(const std::string& n) const {
  for (const auto& s : sets) {
    if (s.name == n) return &s;
  }
  return nullptr;
}

const FunctionDecl* Problem::FindFunction(const std::string& n) const {
  for (const auto& f : functions) {
    if (f.name == n) return &f;
  }
  return nullptr;
}

const BifunctionDecl* Problem::FindBifunction(const std::string& n) const {
  for (const auto& b : bifunctions) {
    if (b.name == n) return &b;
  }
  return nullptr;
}

Problem ParseProblem(const std::string& text) { return Loader(text).Build(); }

std::string SerializeProblem(const Problem& p) {
  std::ostringstream os;
  os << kProblemHeader << "\n\n[problem]\n";
  if (!p.name.empty()) os << "name = " << p.name << "\n";
  os << "dimension = " << p.dim << "\nnorm = " << p.norm_text << "\n";
  if (!p.sets.empty()) {
    os << "\n[sets]\n";
    for (const auto& s : p.sets) {
      os << s.name << " = " << s.source << "\n";
      if (!s.annotations.empty()) os << s.name << ".annotations = " << JoinNames(s.annotations) << "\n";
    }
  }
  auto decls = [&](const char* section, const auto& list) {
    if (list.empty()) return;
    os << "\n[" << section << "]\n";
    for (const auto& d : list) {
      os << d.name << " = " << d.source << "\n";
      if (!d.domain.empty()) os << d.name << ".domain = " << d.domain << "\n";
      if (!d.annotations.empty()) os << d.name << ".annotations = " << JoinNames(d.annotations) << "\n";
    }
  };
  decls("functions", p.functions);
  decls("bifunctions", p.bifunctions);
  os << "\n[task]\nkind = " << ToString(p.task.kind) << "\n";
  for (const auto& [k, v] : p.task.params) os << k << " = " << v << "\n";
  return os.str();
}

}  // namespace asymp::io
