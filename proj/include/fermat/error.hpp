#pragma once

#include <stdexcept>
#include <string>

namespace fermat {

/// Base class for every error raised by the library. `reason()` is the
/// machine-readable tag the CLI prints and maps to an exit status.
class Error : public std::runtime_error {
 public:
  Error(std::string reason, const std::string& what)
      : std::runtime_error(what), reason_(std::move(reason)) {}
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::string reason_;
};

class PreconditionError : public Error {
 public:
  explicit PreconditionError(const std::string& what) : Error("precondition", what) {}
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what) : Error("invalid-config", what) {}
};

/// Arithmetic asked to invert a zero element (or divide by a zero polynomial).
class DivisionByZero : public Error {
 public:
  explicit DivisionByZero(const std::string& what) : Error("division-by-zero", what) {}
};

/// A denominator vanished while evaluating an element under a generator map.
class SubstitutionSingularity : public Error {
 public:
  explicit SubstitutionSingularity(const std::string& what)
      : Error("substitution-singularity", what) {}
};

class UnmappedGenerator : public Error {
 public:
  explicit UnmappedGenerator(const std::string& what) : Error("unmapped-generator", what) {}
};

/// A size guard was hit (for example the prime schedule bit budget).
class ResourceError : public Error {
 public:
  explicit ResourceError(const std::string& what) : Error("resource-limit", what) {}
};

/// A bounded search ran out of budget. Never a claim that nothing exists.
class BudgetExhausted : public Error {
 public:
  explicit BudgetExhausted(const std::string& what) : Error("budget-exhausted", what) {}
  BudgetExhausted(std::string reason, const std::string& what) : Error(std::move(reason), what) {}
};

class InsufficientBound : public BudgetExhausted {
 public:
  explicit InsufficientBound(const std::string& what)
      : BudgetExhausted("insufficient-bound", what) {}
};

/// A mathematical invariant failed to hold. Indicates a bug or a genuine
/// counterexample; never swallowed.
class InvariantViolation : public Error {
 public:
  explicit InvariantViolation(const std::string& what) : Error("invariant-violation", what) {}
};

}  // namespace fermat
