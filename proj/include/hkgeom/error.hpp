#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hk {

enum class ErrorKind {
  ContextMismatch,
  ClosureViolation,
  LogBranchFailure,
  NoSplitConfigured,
  IndexOutOfRange,
  EqualIndices,
  SymmetryViolation,
  SingularMetric,
  DegenerateHessian,
  MalformedInput,
  SingularSystem,
  UnorderedIndices,
  NotTangent,
  VectorNotInM,
  GridMismatch,
  BlowupDetected,
  UnknownSuite,
  ConfigParseError,
};

std::string_view to_string(ErrorKind kind);

/// Single exception type for the library; `kind()` tells callers which
/// contract was violated.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorKind kind, const std::string& what);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace hk
