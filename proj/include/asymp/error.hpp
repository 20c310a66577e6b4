#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace asymp {

// Every structured failure raised by the library carries one of these codes.
enum class ErrorCode {
  kDimensionMismatch,
  kInvalidArgument,
  kUndefinedArithmetic,  // (+inf) + (-inf) and friends
  kNotANumber,
  kBaseNotMember,
  kNonConvexSet,
  kMissingBasePoint,
  kEmptySchedule,
  kMissingHypothesis,
  kEmptyGrid,
  kEmptyStageSolution,
  kImproperFunction,
  kNonFiniteBifunction,
  kEmptySample,
};

std::string_view ToString(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ToString(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void Require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) Fail(code, message);
}

}  // namespace asymp
