#include "graphsync/errors.hpp"

namespace graphsync {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kSelfLoop: return "SelfLoop";
    case ErrorKind::kDuplicateEdge: return "DuplicateEdge";
    case ErrorKind::kNegativeWeight: return "NegativeWeight";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kUnknownName: return "UnknownName";
    case ErrorKind::kDomainError: return "DomainError";
    case ErrorKind::kDegenerateDerivative: return "DegenerateDerivative";
    case ErrorKind::kUnsupportedDimension: return "UnsupportedDimension";
    case ErrorKind::kBoundarySingularity: return "BoundarySingularity";
    case ErrorKind::kNonFiniteState: return "NonFiniteState";
    case ErrorKind::kSimplexViolation: return "SimplexViolation";
    case ErrorKind::kConsistencyViolation: return "ConsistencyViolation";
    case ErrorKind::kOutOfScope: return "OutOfScope";
    case ErrorKind::kQuadratureDivergence: return "QuadratureDivergence";
    case ErrorKind::kRangeError: return "RangeError";
    case ErrorKind::kConfigError: return "ConfigError";
    case ErrorKind::kIoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

}  // namespace graphsync
