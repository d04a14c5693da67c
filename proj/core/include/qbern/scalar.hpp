#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "qbern/padic.hpp"
#include "qbern/rational_function.hpp"

namespace qbern {

enum class Backend { kPadic, kSymbolic };

std::string to_string(Backend backend);

/// A value of either backend. Binary operations require matching backends
/// and throw BackendMismatch otherwise.
class Scalar {
 public:
  Scalar(PadicNumber value) : value_(std::move(value)) {}            // NOLINT
  Scalar(RationalFunction value) : value_(std::move(value)) {}       // NOLINT

  Backend backend() const {
    return std::holds_alternative<PadicNumber>(value_) ? Backend::kPadic
                                                       : Backend::kSymbolic;
  }
  bool is_padic() const { return backend() == Backend::kPadic; }
  bool is_symbolic() const { return backend() == Backend::kSymbolic; }

  const PadicNumber& padic() const;
  const RationalFunction& symbolic() const;

  bool is_zero() const;
  Scalar operator-() const;
  Scalar pow(std::int64_t exponent) const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);

  Scalar& operator+=(const Scalar& other) { return *this = *this + other; }
  Scalar& operator-=(const Scalar& other) { return *this = *this - other; }
  Scalar& operator*=(const Scalar& other) { return *this = *this * other; }

  /// Structural equality of the underlying representations.
  bool operator==(const Scalar& other) const { return value_ == other.value_; }

 private:
  std::variant<PadicNumber, RationalFunction> value_;
};

}  // namespace qbern
