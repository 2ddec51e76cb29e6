#include "bordered/errors.hpp"

namespace bordered {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedMatching: return "MalformedMatching";
    case ErrorKind::DegenerateMatching: return "DegenerateMatching";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::IdempotentMismatch: return "IdempotentMismatch";
    case ErrorKind::BimoduleMismatch: return "BimoduleMismatch";
    case ErrorKind::MiddleAlgebraMismatch: return "MiddleAlgebraMismatch";
    case ErrorKind::NonConverging: return "NonConverging";
    case ErrorKind::NotAComplex: return "NotAComplex";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::BoundaryMismatch: return "BoundaryMismatch";
    case ErrorKind::NotInTwistForm: return "NotInTwistForm";
    case ErrorKind::IncompatibleCycle: return "IncompatibleCycle";
    case ErrorKind::AssignmentIncomplete: return "AssignmentIncomplete";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::DuplicateName: return "DuplicateName";
    case ErrorKind::UnresolvedReference: return "UnresolvedReference";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace bordered
