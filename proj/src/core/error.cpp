#include "asymp/error.hpp"

namespace asymp {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionMismatch: return "dimension_mismatch";
    case ErrorCode::kInvalidArgument: return "invalid_argument";
    case ErrorCode::kUndefinedArithmetic: return "undefined_arithmetic";
    case ErrorCode::kNotANumber: return "not_a_number";
    case ErrorCode::kBaseNotMember: return "base_not_member";
    case ErrorCode::kNonConvexSet: return "non_convex_set";
    case ErrorCode::kMissingBasePoint: return "missing_base_point";
    case ErrorCode::kEmptySchedule: return "empty_schedule";
    case ErrorCode::kMissingHypothesis: return "missing_hypothesis";
    case ErrorCode::kEmptyGrid: return "empty_grid";
    case ErrorCode::kEmptyStageSolution: return "empty_stage_solution";
    case ErrorCode::kImproperFunction: return "improper_function";
    case ErrorCode::kNonFiniteBifunction: return "non_finite_bifunction";
    case ErrorCode::kEmptySample: return "empty_sample";
  }
  return "unknown";
}

}  // namespace asymp
