#pragma once

#include <stdexcept>
#include <string>

namespace augcube {

/// A caller broke an operation's precondition (dimension mismatch, wrong side, ...).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Malformed textual input: vertex strings, vertex lists, certificate files.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A case builder produced something the verifier rejected, and the caller
/// asked for no fallback.
class AmbiguityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Should never happen for valid input; carries enough context to reproduce.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace augcube
