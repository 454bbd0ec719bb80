#include "monoidw/error.hpp"

namespace monoidw {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::AssocViolation: return "AssocViolation";
    case ErrorKind::IdentityViolation: return "IdentityViolation";
    case ErrorKind::SizeGuardExceeded: return "SizeGuardExceeded";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::InternalJDMismatch: return "InternalJDMismatch";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::WitnessDisagreement: return "WitnessDisagreement";
    case ErrorKind::StrictnessViolation: return "StrictnessViolation";
    case ErrorKind::MorphismViolation: return "MorphismViolation";
    case ErrorKind::NoWitness: return "NoWitness";
    case ErrorKind::NotREquivalent: return "NotREquivalent";
    case ErrorKind::NotLEquivalent: return "NotLEquivalent";
    case ErrorKind::CIsUnit: return "CIsUnit";
    case ErrorKind::NDoesNotShrink: return "NDoesNotShrink";
    case ErrorKind::DoesNotGenerate: return "DoesNotGenerate";
    case ErrorKind::InvalidSystem: return "InvalidSystem";
    case ErrorKind::NonTerminatingSuspected: return "NonTerminatingSuspected";
    case ErrorKind::PreconditionNotCertified: return "PreconditionNotCertified";
    case ErrorKind::InfiniteIndex: return "InfiniteIndex";
    case ErrorKind::InvalidDfa: return "InvalidDfa";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::InvalidCode: return "InvalidCode";
    case ErrorKind::NotPrefixFree: return "NotPrefixFree";
    case ErrorKind::PartsNotDisjoint: return "PartsNotDisjoint";
    case ErrorKind::DelayNotCertified: return "DelayNotCertified";
    case ErrorKind::InvalidExpression: return "InvalidExpression";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message,
             std::vector<std::size_t> witness)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      witness_(std::move(witness)) {}

}  // namespace monoidw
