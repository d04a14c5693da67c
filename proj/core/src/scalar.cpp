#include "qbern/scalar.hpp"

#include "qbern/errors.hpp"

namespace qbern {

std::string to_string(Backend backend) {
  return backend == Backend::kPadic ? "padic" : "symbolic";
}

const PadicNumber& Scalar::padic() const {
  if (const auto* v = std::get_if<PadicNumber>(&value_)) return *v;
  throw BackendMismatch("expected a p-adic scalar");
}

const RationalFunction& Scalar::symbolic() const {
  if (const auto* v = std::get_if<RationalFunction>(&value_)) return *v;
  throw BackendMismatch("expected a symbolic scalar");
}

bool Scalar::is_zero() const {
  return std::visit([](const auto& v) { return v.is_zero(); }, value_);
}

Scalar Scalar::operator-() const {
  return std::visit([](const auto& v) { return Scalar(-v); }, value_);
}

Scalar Scalar::pow(std::int64_t exponent) const {
  return std::visit([&](const auto& v) { return Scalar(v.pow(exponent)); }, value_);
}

namespace {

template <typename Op>
Scalar combine(const Scalar& a, const Scalar& b, Op op) {
  if (a.backend() != b.backend()) {
    throw BackendMismatch("scalars from different backends");
  }
  if (a.is_padic()) return Scalar(op(a.padic(), b.padic()));
  return Scalar(op(a.symbolic(), b.symbolic()));
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x + y; });
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x - y; });
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x * y; });
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  return combine(a, b, [](const auto& x, const auto& y) { return x / y; });
}

}  // namespace qbern
