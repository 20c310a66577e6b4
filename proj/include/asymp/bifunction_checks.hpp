#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "asymp/bifunction_model.hpp"
#include "asymp/point.hpp"

namespace asymp {

/// Finite stand-in for "any points x_1, ..., x_n in K".
struct SampleDesign {
  std::vector<Point> points;
  std::size_t tuple_length_max = 4;
  std::size_t subset_size_max = 3;
  double tolerance = 1e-9;
  /// Cap on cycles (or subsets) examined; exceeding it shortens the search and
  /// flags the report partial.
  std::size_t max_tuples = 50'000'000;
  std::uint64_t seed = 0x6a09e667f3bcc909ULL;

  /// Throws kBaseNotMember for points outside K and kInvalidArgument for zero bounds.
  void Validate(const BifunctionModel& psi) const;
};

enum class CheckStatus {
  kConsistent,   // no counterexample on the sample
  kRefuted,      // `witness` violates the definition
  kWitnessed,    // every existential search on the sample succeeded
  kUnwitnessed,  // some search failed; `witness` holds the subset with no partner
};

struct ClassCheckReport {
  std::string class_name;
  CheckStatus status = CheckStatus::kConsistent;
  std::vector<Point> witness;
  std::vector<double> witness_values;
  std::size_t tuples_tested = 0;
  bool partial = false;
};

std::string ToString(CheckStatus status);

/// Every ordered pair (diagonal included): refuted when psi(x, y) >= 0 and psi(y, x) > tol.
ClassCheckReport CheckPseudomonotone(const BifunctionModel& psi, const SampleDesign& design);

/// Cycles x_1, ..., x_n (repetition allowed, 2 <= n <= tuple_length_max):
/// refuted when every edge psi(x_i, x_{i+1}) < -tol. The witness is the
/// shortest, then lexicographically first, refuting cycle by design index.
ClassCheckReport CheckCyclicallyAntiQuasimonotone(const BifunctionModel& psi, const SampleDesign& design);

/// For each subset {y_1..y_n} of the design (n <= subset_size_max), looks for a
/// candidate x with max_i psi(x, y_i) <= tol. Failure is never a refutation.
ClassCheckReport CheckLocallyDominated(const BifunctionModel& psi, const SampleDesign& design,
                                       const std::vector<Point>& candidates);

/// For each subset {y_1..y_n}, looks for x_1..x_n in the pool (the y's plus the
/// design) with max_{i in L} psi(x, y_i) >= -tol for every nonempty L and every
/// sampled x in co{x_i : i in L}. Throws kNonConvexSet unless K is convex.
ClassCheckReport CheckTransferQuasiConvexInY(const BifunctionModel& psi, const SampleDesign& design);

struct KSigmaRecognition {
  enum class Kind { kAutomatic, kStructural, kUnknown };
  Kind kind = Kind::kUnknown;
  /// Set for kStructural: "constant" or "difference".
  std::string structural_class;
  std::string reason;
};

/// Every bifunction on R^d with the norm topology satisfies the condition, so
/// the answer is at least kAutomatic; constant psi >= 0 and difference forms are
/// additionally named as structural classes.
KSigmaRecognition RecognizeKSigma(const BifunctionModel& psi);

std::string ToString(KSigmaRecognition::Kind kind);

}  // namespace asymp
