#pragma once

#include <stdexcept>
#include <string>

namespace deforma {

/// Base class for every error raised by the library. The kind maps onto the
/// CLI exit codes (malformed input 2, invariant violation 3, cap exceeded 4).
class Error : public std::runtime_error {
 public:
  enum class Kind { Domain, Malformed, Invariant, Cap };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Argument outside the domain of an operation (degree out of window, ...).
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(Kind::Domain, what) {}
};

class MalformedInput : public Error {
 public:
  explicit MalformedInput(const std::string& what) : Error(Kind::Malformed, what) {}
};

/// Input data violates an algebraic law (Jacobi, associativity, d^2 = 0, ...).
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error(Kind::Invariant, what) {}
};

class CapExceeded : public Error {
 public:
  explicit CapExceeded(const std::string& what) : Error(Kind::Cap, what) {}
};

}  // namespace deforma
