#include "hkgeom/error.hpp"

namespace hk {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ContextMismatch: return "ContextMismatch";
    case ErrorKind::ClosureViolation: return "ClosureViolation";
    case ErrorKind::LogBranchFailure: return "LogBranchFailure";
    case ErrorKind::NoSplitConfigured: return "NoSplitConfigured";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::EqualIndices: return "EqualIndices";
    case ErrorKind::SymmetryViolation: return "SymmetryViolation";
    case ErrorKind::SingularMetric: return "SingularMetric";
    case ErrorKind::DegenerateHessian: return "DegenerateHessian";
    case ErrorKind::MalformedInput: return "MalformedInput";
    case ErrorKind::SingularSystem: return "SingularSystem";
    case ErrorKind::UnorderedIndices: return "UnorderedIndices";
    case ErrorKind::NotTangent: return "NotTangent";
    case ErrorKind::VectorNotInM: return "VectorNotInM";
    case ErrorKind::GridMismatch: return "GridMismatch";
    case ErrorKind::BlowupDetected: return "BlowupDetected";
    case ErrorKind::UnknownSuite: return "UnknownSuite";
    case ErrorKind::ConfigParseError: return "ConfigParseError";
  }
  return "Unknown";
}

GeometryError::GeometryError(ErrorKind kind, const std::string& what)
    : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

void fail(ErrorKind kind, const std::string& what) { throw GeometryError(kind, what); }

}  // namespace hk
