#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bordered {

enum class ErrorKind {
  MalformedMatching,
  DegenerateMatching,
  UnknownSymbol,
  IdempotentMismatch,
  BimoduleMismatch,
  MiddleAlgebraMismatch,
  NonConverging,
  NotAComplex,
  NotClosed,
  BoundaryMismatch,
  NotInTwistForm,
  IncompatibleCycle,
  AssignmentIncomplete,
  ParseError,
  DuplicateName,
  UnresolvedReference,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Every recoverable failure raised by the library carries one of the kinds
/// above, so callers (the CLI, the Python module) can map it without parsing
/// the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace bordered
