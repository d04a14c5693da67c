#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace qbern {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

/// Certified precision would drop to zero or below.
///
/// When raised from a recurrence, `step()` names the index at which the
/// precision ran out.
class PrecisionExhausted : public Error {
 public:
  explicit PrecisionExhausted(const std::string& what,
                              std::optional<std::int64_t> step = std::nullopt)
      : Error(what), step_(step) {}

  std::optional<std::int64_t> step() const { return step_; }

 private:
  std::optional<std::int64_t> step_;
};

class RequestedPrecisionNotCertified : public Error {
 public:
  using Error::Error;
};

class ContextMismatch : public Error {
 public:
  using Error::Error;
};

class BackendMismatch : public Error {
 public:
  using Error::Error;
};

class NonIntegerExponentInSymbolicMode : public Error {
 public:
  NonIntegerExponentInSymbolicMode()
      : Error("symbolic backend accepts integer exponents only") {}
};

class PoleAtOne : public Error {
 public:
  PoleAtOne() : Error("rational function has a pole at q = 1") {}
};

/// Parameters lie outside the hypotheses under which a formula holds.
class DomainError : public Error {
 public:
  using Error::Error;
};

class LengthMismatch : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace qbern
