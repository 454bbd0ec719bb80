#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace monoidw {

enum class ErrorKind {
  IndexOutOfRange,
  NotClosed,
  AssocViolation,
  IdentityViolation,
  SizeGuardExceeded,
  Parse,
  // Sentinels: these signal an implementation bug, never bad input.
  InternalJDMismatch,
  NotAGroup,
  WitnessDisagreement,
  StrictnessViolation,
  MorphismViolation,
  NoWitness,
  // Preconditions of individual operations.
  NotREquivalent,
  NotLEquivalent,
  CIsUnit,
  NDoesNotShrink,
  DoesNotGenerate,
  InvalidSystem,
  NonTerminatingSuspected,
  PreconditionNotCertified,
  InfiniteIndex,
  InvalidDfa,
  AlphabetMismatch,
  InvalidCode,
  NotPrefixFree,
  PartsNotDisjoint,
  DelayNotCertified,
  InvalidExpression,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. `witness()` carries the offending
/// indices where the error has one (e.g. the (i, j, k) of an associativity
/// violation).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::size_t> witness = {});

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::size_t>& witness() const noexcept { return witness_; }

 private:
  ErrorKind kind_;
  std::vector<std::size_t> witness_;
};

}  // namespace monoidw
