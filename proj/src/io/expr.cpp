#include "asymp/io/expr.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "asymp/io/diagnostic.hpp"

namespace asymp::io {

std::string FormatNumber(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string Diagnostic::Format() const {
  std::ostringstream os;
  os << code;
  if (line > 0) os << " line " << line;
  if (column > 0) os << " col " << column;
  os << ": " << message;
  if (!expected.empty()) {
    os << " (expected";
    for (std::size_t i = 0; i < expected.size(); ++i) os << (i == 0 ? " " : ", ") << expected[i];
    os << ")";
  }
  return os.str();
}

ParseError::ParseError(Diagnostic d) : std::runtime_error(d.Format()), diagnostic_(std::move(d)) {}

enum class Op { kNumber, kX, kY, kXi, kYi, kVector, kNeg, kAdd, kSub, kMul, kDiv, kPow, kCmp, kAnd, kOr, kNot, kCall,
                kPiecewise, kIn };
enum class Fn { kAbs, kSqrt, kExp, kLog, kSin, kCos, kTan, kArctan, kMin, kMax, kNorm, kDot };
enum class Cmp { kLt, kLe, kGt, kGe, kEq, kNe };

struct Expr {
  Op op = Op::kNumber;
  ValueType type = ValueType::kScalar;
  std::size_t dim = 0;
  double number = 0.0;
  std::string name;  // symbolic constant, function or set name
  std::size_t index = 0;
  Fn fn = Fn::kAbs;
  Cmp cmp = Cmp::kLt;
  std::optional<Norm> norm;  // explicit norm(v, p)
  std::vector<std::shared_ptr<Expr>> args;
  bool uses_x = false;
  bool uses_y = false;
};

namespace {

using ExprPtr = std::shared_ptr<Expr>;

enum class Tok { kNumber, kIdent, kLParen, kRParen, kLBracket, kRBracket, kComma, kPlus, kMinus, kStar, kSlash,
                 kCaret, kLt, kLe, kGt, kGe, kEq, kNe, kEnd };

struct Token {
  Tok kind = Tok::kEnd;
  std::string text;
  double number = 0.0;
  int column = 0;  // 1-based within the expression
};

std::string Describe(const Token& t) {
  if (t.kind == Tok::kEnd) return "end of expression";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  Lexer(const std::string& text, int line, int offset) : text_(text), line_(line), offset_(offset) {}

  std::vector<Token> Run() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (true) {
      while (i < text_.size() && std::isspace(static_cast<unsigned char>(text_[i]))) ++i;
      Token t;
      t.column = static_cast<int>(i) + 1;
      if (i == text_.size()) {
        out.push_back(t);
        return out;
      }
      const char c = text_[i];
      if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < text_.size() &&
                                                          std::isdigit(static_cast<unsigned char>(text_[i + 1])))) {
        std::size_t j = i;
        while (j < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[j])) || text_[j] == '.')) ++j;
        if (j < text_.size() && (text_[j] == 'e' || text_[j] == 'E')) {
          std::size_t k = j + 1;
          if (k < text_.size() && (text_[k] == '+' || text_[k] == '-')) ++k;
          if (k < text_.size() && std::isdigit(static_cast<unsigned char>(text_[k]))) {
            j = k;
            while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
          }
        }
        t.kind = Tok::kNumber;
        t.text = text_.substr(i, j - i);
        const auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
        if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
          Throw(diag::kUnexpectedToken, t.column, "malformed number '" + t.text + "'");
        }
        i = j;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
        t.kind = Tok::kIdent;
        t.text = text_.substr(i, j - i);
        i = j;
      } else {
        const std::string two = text_.substr(i, 2);
        if (two == "<=" || two == ">=" || two == "==" || two == "!=") {
          t.kind = two == "<=" ? Tok::kLe : two == ">=" ? Tok::kGe : two == "==" ? Tok::kEq : Tok::kNe;
          t.text = two;
          i += 2;
        } else {
          t.text = std::string(1, c);
          switch (c) {
            case '(': t.kind = Tok::kLParen; break;
            case ')': t.kind = Tok::kRParen; break;
            case '[': t.kind = Tok::kLBracket; break;
            case ']': t.kind = Tok::kRBracket; break;
            case ',': t.kind = Tok::kComma; break;
            case '+': t.kind = Tok::kPlus; break;
            case '-': t.kind = Tok::kMinus; break;
            case '*': t.kind = Tok::kStar; break;
            case '/': t.kind = Tok::kSlash; break;
            case '^': t.kind = Tok::kCaret; break;
            case '<': t.kind = Tok::kLt; break;
            case '>': t.kind = Tok::kGt; break;
            default: Throw(diag::kUnexpectedToken, t.column, "unexpected character '" + t.text + "'");
          }
          ++i;
        }
      }
      out.push_back(t);
    }
  }

  [[noreturn]] void Throw(const char* code, int column, std::string msg) const {
    throw ParseError(Diagnostic{code, line_, column + offset_, std::move(msg), {}});
  }

 private:
  const std::string& text_;
  int line_;
  int offset_;
};

struct FnInfo {
  const char* name;
  Fn fn;
};

constexpr FnInfo kFunctions[] = {
    {"abs", Fn::kAbs},   {"sqrt", Fn::kSqrt},     {"exp", Fn::kExp},    {"log", Fn::kLog},
    {"sin", Fn::kSin},   {"cos", Fn::kCos},       {"tan", Fn::kTan},    {"arctan", Fn::kArctan},
    {"atan", Fn::kArctan}, {"min", Fn::kMin},     {"max", Fn::kMax},    {"norm", Fn::kNorm},
    {"dot", Fn::kDot},
};

const char* FnName(Fn fn) {
  for (const auto& info : kFunctions) {
    if (info.fn == fn) return info.name;
  }
  return "?";
}

ExprPtr Leaf(Op op, ValueType type) {
  auto e = std::make_shared<Expr>();
  e->op = op;
  e->type = type;
  return e;
}

ExprPtr Node(Op op, ValueType type, std::vector<ExprPtr> args) {
  auto e = Leaf(op, type);
  for (const auto& a : args) {
    e->uses_x = e->uses_x || a->uses_x;
    e->uses_y = e->uses_y || a->uses_y;
  }
  e->args = std::move(args);
  return e;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, const ExprScope* scope, int line, int offset)
      : toks_(std::move(tokens)), scope_(scope), line_(line), offset_(offset) {}

  ExprPtr ParseAll() {
    ExprPtr e = Or();
    if (Peek().kind != Tok::kEnd) {
      Throw(diag::kUnexpectedToken, Peek(), "unexpected " + Describe(Peek()),
            {"operator", "')'", "end of expression"});
    }
    return e;
  }

 private:
  const Token& Peek() const { return toks_[pos_]; }
  Token Next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool IsWord(const char* w) const { return Peek().kind == Tok::kIdent && Peek().text == w; }

  [[noreturn]] void Throw(const char* code, const Token& at, std::string msg, std::vector<std::string> expected = {}) {
    throw ParseError(Diagnostic{code, line_, at.column + offset_, std::move(msg), std::move(expected)});
  }

  void RequireType(const ExprPtr& e, ValueType want, const Token& at, const std::string& what) {
    if (e->type == want) return;
    static const char* names[] = {"scalar", "vector", "boolean"};
    Throw(diag::kType, at, what + " needs a " + names[static_cast<int>(want)] + " operand, got " +
                               names[static_cast<int>(e->type)]);
  }

  ExprPtr Or() {
    ExprPtr lhs = And();
    while (IsWord("or")) {
      const Token op = Next();
      ExprPtr rhs = And();
      RequireType(lhs, ValueType::kBool, op, "'or'");
      RequireType(rhs, ValueType::kBool, op, "'or'");
      lhs = Node(Op::kOr, ValueType::kBool, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr And() {
    ExprPtr lhs = Not();
    while (IsWord("and")) {
      const Token op = Next();
      ExprPtr rhs = Not();
      RequireType(lhs, ValueType::kBool, op, "'and'");
      RequireType(rhs, ValueType::kBool, op, "'and'");
      lhs = Node(Op::kAnd, ValueType::kBool, {lhs, rhs});
    }
    return lhs;
  }

  ExprPtr Not() {
    if (IsWord("not")) {
      const Token op = Next();
      ExprPtr operand = Not();
      RequireType(operand, ValueType::kBool, op, "'not'");
      return Node(Op::kNot, ValueType::kBool, {operand});
    }
    return Comparison();
  }

  ExprPtr Comparison() {
    ExprPtr lhs = Sum();
    const Tok k = Peek().kind;
    if (k != Tok::kLt && k != Tok::kLe && k != Tok::kGt && k != Tok::kGe && k != Tok::kEq && k != Tok::kNe) return lhs;
    const Token op = Next();
    ExprPtr rhs = Sum();
    RequireType(lhs, ValueType::kScalar, op, "comparison");
    RequireType(rhs, ValueType::kScalar, op, "comparison");
    auto e = Node(Op::kCmp, ValueType::kBool, {lhs, rhs});
    e->cmp = k == Tok::kLt ? Cmp::kLt : k == Tok::kLe ? Cmp::kLe : k == Tok::kGt ? Cmp::kGt
           : k == Tok::kGe ? Cmp::kGe : k == Tok::kEq ? Cmp::kEq : Cmp::kNe;
    return e;
  }

  ExprPtr Arith(Op op, const Token& at, ExprPtr lhs, ExprPtr rhs) {
    const ValueType a = lhs->type;
    const ValueType b = rhs->type;
    if (a == ValueType::kBool || b == ValueType::kBool) Throw(diag::kType, at, "arithmetic on a boolean");
    ValueType result = ValueType::kScalar;
    std::size_t dim = 0;
    switch (op) {
      case Op::kAdd:
      case Op::kSub:
        if (a != b) Throw(diag::kType, at, "cannot add or subtract a scalar and a vector");
        if (a == ValueType::kVector) {
          if (lhs->dim != rhs->dim) Throw(diag::kDimension, at, "vector lengths differ");
          result = ValueType::kVector;
          dim = lhs->dim;
        }
        break;
      case Op::kMul:
        if (a == ValueType::kVector && b == ValueType::kVector) Throw(diag::kType, at, "use dot(u, v) for vectors");
        if (a == ValueType::kVector || b == ValueType::kVector) {
          result = ValueType::kVector;
          dim = a == ValueType::kVector ? lhs->dim : rhs->dim;
        }
        break;
      case Op::kDiv:
        if (b == ValueType::kVector) Throw(diag::kType, at, "cannot divide by a vector");
        if (a == ValueType::kVector) {
          result = ValueType::kVector;
          dim = lhs->dim;
        }
        break;
      default:
        if (a != ValueType::kScalar || b != ValueType::kScalar) Throw(diag::kType, at, "'^' needs scalars");
        break;
    }
    auto e = Node(op, result, {lhs, rhs});
    e->dim = dim;
    return e;
  }

  ExprPtr Sum() {
    ExprPtr lhs = Term();
    while (Peek().kind == Tok::kPlus || Peek().kind == Tok::kMinus) {
      const Token op = Next();
      lhs = Arith(op.kind == Tok::kPlus ? Op::kAdd : Op::kSub, op, lhs, Term());
    }
    return lhs;
  }

  ExprPtr Term() {
    ExprPtr lhs = Unary();
    while (Peek().kind == Tok::kStar || Peek().kind == Tok::kSlash) {
      const Token op = Next();
      lhs = Arith(op.kind == Tok::kStar ? Op::kMul : Op::kDiv, op, lhs, Unary());
    }
    return lhs;
  }

  ExprPtr Unary() {
    if (Peek().kind == Tok::kMinus) {
      const Token op = Next();
      ExprPtr operand = Unary();
      if (operand->type == ValueType::kBool) Throw(diag::kType, op, "cannot negate a boolean");
      auto e = Node(Op::kNeg, operand->type, {operand});
      e->dim = operand->dim;
      return e;
    }
    return Power();
  }

  ExprPtr Power() {
    ExprPtr base = Primary();
    if (Peek().kind != Tok::kCaret) return base;
    const Token op = Next();
    return Arith(Op::kPow, op, base, Unary());
  }

  void Expect(Tok kind, const Token& open, const char* text) {
    if (Peek().kind == kind) {
      Next();
      return;
    }
    if (Peek().kind == Tok::kEnd) {
      Throw(diag::kUnclosedParen, open, std::string("unclosed '") + open.text + "'", {std::string("'") + text + "'"});
    }
    Throw(diag::kUnexpectedToken, Peek(), "unexpected " + Describe(Peek()), {std::string("'") + text + "'", "','"});
  }

  std::vector<std::pair<Token, ExprPtr>> Arguments(const Token& open, Tok close, const char* close_text) {
    std::vector<std::pair<Token, ExprPtr>> args;
    if (Peek().kind == close) {
      Next();
      return args;
    }
    while (true) {
      const Token at = Peek();
      args.emplace_back(at, Or());
      if (Peek().kind == Tok::kComma) {
        Next();
        continue;
      }
      Expect(close, open, close_text);
      return args;
    }
  }

  ExprPtr Variable(const Token& t) {
    const std::string& s = t.text;
    if (s == "pi" || s == "inf") {
      auto e = Leaf(Op::kNumber, ValueType::kScalar);
      e->number = s == "pi" ? std::numbers::pi : INFINITY;
      e->name = s;
      return e;
    }
    if (scope_ != nullptr && (s[0] == 'x' || s[0] == 'y')) {
      const bool is_x = s[0] == 'x';
      const bool allowed = is_x ? scope_->allow_x : scope_->allow_y;
      if (allowed && s.size() == 1) {
        auto e = Leaf(is_x ? Op::kX : Op::kY, ValueType::kVector);
        e->dim = scope_->dim;
        (is_x ? e->uses_x : e->uses_y) = true;
        return e;
      }
      if (allowed && s.size() > 1 && s.find_first_not_of("0123456789", 1) == std::string::npos) {
        const std::size_t k = std::stoul(s.substr(1));
        if (k == 0 || k > scope_->dim) {
          Throw(diag::kDimension, t, "'" + s + "' is out of range for dimension " + std::to_string(scope_->dim));
        }
        auto e = Leaf(is_x ? Op::kXi : Op::kYi, ValueType::kScalar);
        e->index = k - 1;
        (is_x ? e->uses_x : e->uses_y) = true;
        return e;
      }
    }
    Throw(diag::kUnknownIdentifier, t, "unknown identifier '" + s + "'");
  }

  ExprPtr Call(const Token& name, const Token& open) {
    if (name.text == "in") return InCall(name, open);
    if (name.text == "piecewise") return Piecewise(name, open);
    const FnInfo* info = nullptr;
    for (const auto& f : kFunctions) {
      if (name.text == f.name) info = &f;
    }
    if (info == nullptr) Throw(diag::kUnknownIdentifier, name, "unknown function '" + name.text + "'");
    auto args = Arguments(open, Tok::kRParen, ")");
    auto arity = [&](std::size_t lo, std::size_t hi) {
      if (args.size() < lo || args.size() > hi) {
        std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + (hi > 100 ? " or more" : " or " + std::to_string(hi));
        Throw(diag::kArity, name, "'" + name.text + "' takes " + want + " argument(s), got " + std::to_string(args.size()));
      }
    };
    std::vector<ExprPtr> nodes;
    for (auto& a : args) nodes.push_back(a.second);
    ExprPtr e;
    switch (info->fn) {
      case Fn::kMin:
      case Fn::kMax:
        arity(2, 1000);
        for (auto& [at, a] : args) RequireType(a, ValueType::kScalar, at, "'" + name.text + "'");
        e = Node(Op::kCall, ValueType::kScalar, nodes);
        break;
      case Fn::kNorm: {
        arity(1, 2);
        RequireType(args[0].second, ValueType::kVector, args[0].first, "'norm'");
        e = Node(Op::kCall, ValueType::kScalar, nodes);
        if (args.size() == 2) {
          const auto& p = args[1].second;
          RequireType(p, ValueType::kScalar, args[1].first, "'norm' order");
          if (p->uses_x || p->uses_y) Throw(diag::kType, args[1].first, "'norm' order must be a constant");
          const double value = EvalConstant(*p);
          if (std::isinf(value) && value > 0) {
            e->norm = Norm::Max();
          } else if (value >= 1.0) {
            e->norm = Norm::P(value);
          } else {
            Throw(diag::kType, args[1].first, "'norm' order must be at least 1");
          }
        }
        break;
      }
      case Fn::kDot:
        arity(2, 2);
        RequireType(args[0].second, ValueType::kVector, args[0].first, "'dot'");
        RequireType(args[1].second, ValueType::kVector, args[1].first, "'dot'");
        if (args[0].second->dim != args[1].second->dim) Throw(diag::kDimension, name, "'dot' of vectors of different length");
        e = Node(Op::kCall, ValueType::kScalar, nodes);
        break;
      default:
        arity(1, 1);
        RequireType(args[0].second, ValueType::kScalar, args[0].first, "'" + name.text + "'");
        e = Node(Op::kCall, ValueType::kScalar, nodes);
        break;
    }
    e->fn = info->fn;
    e->name = FnName(info->fn);
    return e;
  }

  ExprPtr InCall(const Token& name, const Token& open) {
    const Token at = Peek();
    ExprPtr v = Or();
    RequireType(v, ValueType::kVector, at, "'in'");
    if (scope_ != nullptr && v->dim != scope_->dim) Throw(diag::kDimension, at, "'in' needs a point of the problem dimension");
    if (Peek().kind != Tok::kComma) {
      if (Peek().kind == Tok::kRParen) Throw(diag::kArity, name, "'in' takes 2 arguments");
      Expect(Tok::kComma, open, ",");
    }
    Next();
    const Token set = Next();
    if (set.kind != Tok::kIdent) Throw(diag::kUnexpectedToken, set, "unexpected " + Describe(set), {"set name"});
    if (scope_ == nullptr || !scope_->set_index.contains(set.text)) {
      Throw(diag::kUndeclared, set, "undeclared set '" + set.text + "'");
    }
    if (Peek().kind == Tok::kComma) Throw(diag::kArity, name, "'in' takes 2 arguments");
    Expect(Tok::kRParen, open, ")");
    auto e = Node(Op::kIn, ValueType::kBool, {v});
    e->name = set.text;
    e->index = scope_->set_index.at(set.text);
    return e;
  }

  ExprPtr Piecewise(const Token& name, const Token& open) {
    auto args = Arguments(open, Tok::kRParen, ")");
    if (args.size() < 3 || args.size() % 2 == 0) {
      Throw(diag::kPiecewise, name, "piecewise needs condition/value pairs followed by a default value, got " +
                                       std::to_string(args.size()) + " argument(s)");
    }
    std::vector<ExprPtr> nodes;
    for (std::size_t i = 0; i < args.size(); ++i) {
      const bool is_condition = i % 2 == 0 && i + 1 < args.size();
      if (is_condition && args[i].second->type != ValueType::kBool) {
        Throw(diag::kPiecewise, args[i].first, "piecewise condition " + std::to_string(i / 2 + 1) + " is not boolean");
      }
      if (!is_condition) RequireType(args[i].second, ValueType::kScalar, args[i].first, "piecewise value");
      nodes.push_back(args[i].second);
    }
    auto e = Node(Op::kPiecewise, ValueType::kScalar, nodes);
    e->name = "piecewise";
    return e;
  }

  ExprPtr Primary() {
    const Token t = Next();
    switch (t.kind) {
      case Tok::kNumber: {
        auto e = Leaf(Op::kNumber, ValueType::kScalar);
        e->number = t.number;
        return e;
      }
      case Tok::kIdent:
        if (t.text == "and" || t.text == "or" || t.text == "not") break;
        if (Peek().kind == Tok::kLParen) {
          const Token open = Next();
          return Call(t, open);
        }
        return Variable(t);
      case Tok::kLParen: {
        ExprPtr e = Or();
        Expect(Tok::kRParen, t, ")");
        return e;
      }
      case Tok::kLBracket: {
        auto args = Arguments(t, Tok::kRBracket, "]");
        if (args.empty()) Throw(diag::kDimension, t, "empty vector");
        std::vector<ExprPtr> nodes;
        for (auto& [at, a] : args) {
          RequireType(a, ValueType::kScalar, at, "vector entry");
          nodes.push_back(a);
        }
        auto e = Node(Op::kVector, ValueType::kVector, nodes);
        e->dim = nodes.size();
        return e;
      }
      default:
        break;
    }
    Throw(diag::kUnexpectedToken, t, "unexpected " + Describe(t), {"number", "identifier", "'('", "'['"});
  }

  double EvalConstant(const Expr& e);

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const ExprScope* scope_;
  int line_;
  int offset_;
};

struct Env {
  std::span<const double> x;
  std::span<const double> y;
  const std::vector<FeasibleSet>* sets;
  Norm norm;
};

double EvalScalar(const Expr& e, const Env& env);
bool EvalBool(const Expr& e, const Env& env);

// View of a vector value; x and y are returned without copying.
std::span<const double> EvalVector(const Expr& e, const Env& env, std::vector<double>& scratch) {
  switch (e.op) {
    case Op::kX: return env.x;
    case Op::kY: return env.y;
    case Op::kVector:
      scratch.resize(e.args.size());
      for (std::size_t i = 0; i < e.args.size(); ++i) scratch[i] = EvalScalar(*e.args[i], env);
      return scratch;
    case Op::kNeg: {
      std::vector<double> tmp;
      const auto v = EvalVector(*e.args[0], env, tmp);
      scratch.assign(v.begin(), v.end());
      for (auto& c : scratch) c = -c;
      return scratch;
    }
    case Op::kAdd:
    case Op::kSub: {
      std::vector<double> ta, tb;
      const auto a = EvalVector(*e.args[0], env, ta);
      const auto b = EvalVector(*e.args[1], env, tb);
      scratch.resize(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) scratch[i] = e.op == Op::kAdd ? a[i] + b[i] : a[i] - b[i];
      return scratch;
    }
    case Op::kMul:
    case Op::kDiv: {
      const bool vec_first = e.args[0]->type == ValueType::kVector;
      std::vector<double> tmp;
      const auto v = EvalVector(*e.args[vec_first ? 0 : 1], env, tmp);
      const double s = EvalScalar(*e.args[vec_first ? 1 : 0], env);
      scratch.resize(v.size());
      for (std::size_t i = 0; i < v.size(); ++i) scratch[i] = e.op == Op::kMul ? v[i] * s : v[i] / s;
      return scratch;
    }
    default:
      break;
  }
  return scratch;
}

double Apply(Fn fn, double v) {
  switch (fn) {
    case Fn::kAbs: return std::abs(v);
    case Fn::kSqrt: return std::sqrt(v);
    case Fn::kExp: return std::exp(v);
    case Fn::kLog: return std::log(v);
    case Fn::kSin: return std::sin(v);
    case Fn::kCos: return std::cos(v);
    case Fn::kTan: return std::tan(v);
    case Fn::kArctan: return std::atan(v);
    default: return v;
  }
}

double EvalScalar(const Expr& e, const Env& env) {
  switch (e.op) {
    case Op::kNumber: return e.number;
    case Op::kXi: return env.x[e.index];
    case Op::kYi: return env.y[e.index];
    case Op::kNeg: return -EvalScalar(*e.args[0], env);
    case Op::kAdd: return EvalScalar(*e.args[0], env) + EvalScalar(*e.args[1], env);
    case Op::kSub: return EvalScalar(*e.args[0], env) - EvalScalar(*e.args[1], env);
    case Op::kMul: return EvalScalar(*e.args[0], env) * EvalScalar(*e.args[1], env);
    case Op::kDiv: return EvalScalar(*e.args[0], env) / EvalScalar(*e.args[1], env);
    case Op::kPow: return std::pow(EvalScalar(*e.args[0], env), EvalScalar(*e.args[1], env));
    case Op::kPiecewise: {
      const std::size_t n = e.args.size();
      for (std::size_t i = 0; i + 1 < n; i += 2) {
        if (EvalBool(*e.args[i], env)) return EvalScalar(*e.args[i + 1], env);
      }
      return EvalScalar(*e.args[n - 1], env);
    }
    case Op::kCall:
      switch (e.fn) {
        case Fn::kMin:
        case Fn::kMax: {
          double best = EvalScalar(*e.args[0], env);
          for (std::size_t i = 1; i < e.args.size(); ++i) {
            const double v = EvalScalar(*e.args[i], env);
            best = e.fn == Fn::kMin ? std::min(best, v) : std::max(best, v);
          }
          return best;
        }
        case Fn::kNorm: {
          std::vector<double> tmp;
          return e.norm.value_or(env.norm)(EvalVector(*e.args[0], env, tmp));
        }
        case Fn::kDot: {
          std::vector<double> ta, tb;
          const auto a = EvalVector(*e.args[0], env, ta);
          const auto b = EvalVector(*e.args[1], env, tb);
          double s = 0.0;
          for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
          return s;
        }
        default:
          return Apply(e.fn, EvalScalar(*e.args[0], env));
      }
    default:
      return NAN;
  }
}

bool EvalBool(const Expr& e, const Env& env) {
  switch (e.op) {
    case Op::kAnd: return EvalBool(*e.args[0], env) && EvalBool(*e.args[1], env);
    case Op::kOr: return EvalBool(*e.args[0], env) || EvalBool(*e.args[1], env);
    case Op::kNot: return !EvalBool(*e.args[0], env);
    case Op::kIn: {
      std::vector<double> tmp;
      return (*env.sets)[e.index].ContainsUnchecked(EvalVector(*e.args[0], env, tmp));
    }
    case Op::kCmp: {
      const double a = EvalScalar(*e.args[0], env);
      const double b = EvalScalar(*e.args[1], env);
      switch (e.cmp) {
        case Cmp::kLt: return a < b;
        case Cmp::kLe: return a <= b;
        case Cmp::kGt: return a > b;
        case Cmp::kGe: return a >= b;
        case Cmp::kEq: return a == b;
        case Cmp::kNe: return a != b;
      }
      return false;
    }
    default:
      return false;
  }
}

double Parser::EvalConstant(const Expr& e) { return EvalScalar(e, Env{{}, {}, nullptr, Norm()}); }

int Precedence(const Expr& e) {
  switch (e.op) {
    case Op::kOr: return 1;
    case Op::kAnd: return 2;
    case Op::kNot: return 3;
    case Op::kCmp: return 4;
    case Op::kAdd:
    case Op::kSub: return 5;
    case Op::kMul:
    case Op::kDiv: return 6;
    case Op::kNeg: return 7;
    case Op::kPow: return 8;
    default: return 9;
  }
}

void Print(const Expr& e, std::string& out);

void PrintChild(const Expr& child, int min_prec, std::string& out) {
  const bool paren = Precedence(child) < min_prec;
  if (paren) out += '(';
  Print(child, out);
  if (paren) out += ')';
}

void Print(const Expr& e, std::string& out) {
  const int p = Precedence(e);
  auto binary = [&](const char* op) {
    PrintChild(*e.args[0], p, out);
    out += op;
    PrintChild(*e.args[1], p + 1, out);
  };
  switch (e.op) {
    case Op::kNumber: out += e.name.empty() ? FormatNumber(e.number) : e.name; break;
    case Op::kX: out += 'x'; break;
    case Op::kY: out += 'y'; break;
    case Op::kXi: out += "x" + std::to_string(e.index + 1); break;
    case Op::kYi: out += "y" + std::to_string(e.index + 1); break;
    case Op::kVector:
    case Op::kCall:
    case Op::kPiecewise: {
      const bool vec = e.op == Op::kVector;
      out += vec ? "[" : e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        if (i > 0) out += ", ";
        Print(*e.args[i], out);
      }
      out += vec ? "]" : ")";
      break;
    }
    case Op::kIn:
      out += "in(";
      Print(*e.args[0], out);
      out += ", " + e.name + ")";
      break;
    case Op::kNeg:
      out += '-';
      PrintChild(*e.args[0], p, out);
      break;
    case Op::kNot:
      out += "not ";
      PrintChild(*e.args[0], p, out);
      break;
    case Op::kAdd: binary(" + "); break;
    case Op::kSub: binary(" - "); break;
    case Op::kMul: binary(" * "); break;
    case Op::kDiv: binary(" / "); break;
    case Op::kPow:
      PrintChild(*e.args[0], p + 1, out);
      out += " ^ ";
      PrintChild(*e.args[1], 7, out);
      break;
    case Op::kAnd: binary(" and "); break;
    case Op::kOr: binary(" or "); break;
    case Op::kCmp: {
      static const char* ops[] = {" < ", " <= ", " > ", " >= ", " == ", " != "};
      PrintChild(*e.args[0], 5, out);
      out += ops[static_cast<int>(e.cmp)];
      PrintChild(*e.args[1], 5, out);
      break;
    }
  }
}

}  // namespace

CompiledExpr CompiledExpr::Compile(const std::string& text, const ExprScope& scope, int line, int column_offset) {
  Lexer lexer(text, line, column_offset);
  Parser parser(lexer.Run(), &scope, line, column_offset);
  CompiledExpr c;
  c.root_ = parser.ParseAll();
  c.sets_ = scope.sets;
  c.norm_ = scope.norm;
  return c;
}

ValueType CompiledExpr::type() const { return root_->type; }
bool CompiledExpr::uses_x() const { return root_->uses_x; }
bool CompiledExpr::uses_y() const { return root_->uses_y; }

std::string CompiledExpr::ToString() const {
  std::string out;
  Print(*root_, out);
  return out;
}

double CompiledExpr::Scalar(std::span<const double> x, std::span<const double> y) const {
  return EvalScalar(*root_, Env{x, y, sets_.get(), norm_});
}

bool CompiledExpr::Bool(std::span<const double> x, std::span<const double> y) const {
  return EvalBool(*root_, Env{x, y, sets_.get(), norm_});
}

double EvaluateConstant(const std::string& text, int line, int column_offset) {
  ExprScope scope;
  scope.allow_x = false;
  const CompiledExpr c = CompiledExpr::Compile(text, scope, line, column_offset);
  if (c.type() != ValueType::kScalar) {
    throw ParseError(Diagnostic{diag::kType, line, column_offset + 1, "expected a number", {}});
  }
  return c.Scalar({});
}

}  // namespace asymp::io
