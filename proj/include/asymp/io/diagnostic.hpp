#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace asymp::io {

/// Stable diagnostic codes. E1xx come from expressions, E2xx from file structure.
namespace diag {
inline constexpr const char* kUnexpectedToken = "E101";
inline constexpr const char* kUnclosedParen = "E102";
inline constexpr const char* kUnknownIdentifier = "E103";
inline constexpr const char* kArity = "E104";
inline constexpr const char* kType = "E105";
inline constexpr const char* kDimension = "E106";
inline constexpr const char* kPiecewise = "E107";
inline constexpr const char* kHeader = "E201";
inline constexpr const char* kUnknownSection = "E202";
inline constexpr const char* kMalformedLine = "E203";
inline constexpr const char* kDuplicate = "E204";
inline constexpr const char* kUndeclared = "E205";
inline constexpr const char* kBadSet = "E206";
inline constexpr const char* kMissingTask = "E207";
inline constexpr const char* kTaskParam = "E208";
inline constexpr const char* kAnnotation = "E209";
}  // namespace diag

struct Diagnostic {
  std::string code;
  int line = 0;    // 1-based; 0 when not tied to a line
  int column = 0;  // 1-based; 0 when not tied to a column
  std::string message;
  std::vector<std::string> expected;

  std::string Format() const;
};

class ParseError : public std::runtime_error {
 public:
  explicit ParseError(Diagnostic d);
  const Diagnostic& diagnostic() const { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

}  // namespace asymp::io
