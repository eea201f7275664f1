#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace graphsync {

enum class ErrorKind {
  kIndexOutOfRange,
  kSelfLoop,
  kDuplicateEdge,
  kNegativeWeight,
  kInvalidArgument,
  kDimensionMismatch,
  kUnknownName,
  kDomainError,
  kDegenerateDerivative,
  kUnsupportedDimension,
  kBoundarySingularity,
  kNonFiniteState,
  kSimplexViolation,
  kConsistencyViolation,
  kOutOfScope,
  kQuadratureDivergence,
  kRangeError,
  kConfigError,
  kIoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above so
// callers (and the CLI) can branch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace graphsync
