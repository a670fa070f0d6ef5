#include "amort/ext.hpp"

#include <limits>

#include "amort/errors.hpp"

namespace amort {

const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Arithmetic: return "ArithmeticError";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::TypeMismatch: return "TypeMismatch";
    case ErrorKind::NonPositiveMultiplicity: return "NonPositiveMultiplicity";
    case ErrorKind::IllFormedCredit: return "IllFormedCredit";
    case ErrorKind::InsufficientResources: return "InsufficientResources";
    case ErrorKind::StuckTerm: return "StuckTerm";
    case ErrorKind::InfiniteCreditOverflow: return "InfiniteCreditOverflow";
    case ErrorKind::FuelExhausted: return "FuelExhausted";
    case ErrorKind::Parse: return "ParseError";
    case ErrorKind::MalformedCertificate: return "MalformedCertificate";
    case ErrorKind::Unsupported: return "Unsupported";
    case ErrorKind::BoundViolation: return "BoundViolation";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
  }
  return "Error";
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw ArithmeticError("integer overflow in addition");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw ArithmeticError("integer overflow in multiplication");
  return out;
}

// ---- ExtNat ----

std::uint64_t ExtNat::value() const {
  if (inf_) throw ArithmeticError("finite value requested from inf");
  return value_;
}

ExtNat operator+(ExtNat a, ExtNat b) {
  if (a.inf_ || b.inf_) return ExtNat::inf();
  std::uint64_t out;
  if (__builtin_add_overflow(a.value_, b.value_, &out)) throw ArithmeticError("natural overflow in addition");
  return ExtNat(out);
}

ExtNat operator*(ExtNat a, ExtNat b) {
  if (a.is_zero() || b.is_zero()) return ExtNat(0);
  if (a.inf_ || b.inf_) return ExtNat::inf();
  std::uint64_t out;
  if (__builtin_mul_overflow(a.value_, b.value_, &out)) throw ArithmeticError("natural overflow in multiplication");
  return ExtNat(out);
}

ExtNat monus(ExtNat a, ExtNat b) {
  if (a.inf_) return ExtNat::inf();
  if (b.inf_) return ExtNat(0);
  return ExtNat(a.value_ > b.value_ ? a.value_ - b.value_ : 0);
}

ExtNat ext_mul(ExtNat k, ExtNat m) { return k * m; }

std::string ExtNat::to_string() const { return inf_ ? "inf" : std::to_string(value_); }

std::optional<ExtNat> ExtNat::parse(const std::string& s) {
  if (s == "inf") return ExtNat::inf();
  if (s.empty()) return std::nullopt;
  std::uint64_t v = 0;
  for (char ch : s) {
    if (ch < '0' || ch > '9') return std::nullopt;
    if (__builtin_mul_overflow(v, 10u, &v) || __builtin_add_overflow(v, std::uint64_t(ch - '0'), &v))
      return std::nullopt;
  }
  return ExtNat(v);
}

// ---- ExtInt ----

ExtInt ExtInt::from_nat(ExtNat n) {
  if (n.is_inf()) return ExtInt::inf();
  if (n.value() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
    throw ArithmeticError("natural too large for a cost");
  return ExtInt(static_cast<std::int64_t>(n.value()));
}

std::int64_t ExtInt::value() const {
  if (inf_) throw ArithmeticError("finite value requested from inf");
  return value_;
}

ExtInt operator+(ExtInt a, ExtInt b) {
  if (a.inf_ || b.inf_) return ExtInt::inf();
  return ExtInt(checked_add(a.value_, b.value_));
}

ExtInt operator-(ExtInt a) {
  if (a.inf_) return a;
  if (a.value_ == std::numeric_limits<std::int64_t>::min()) throw ArithmeticError("integer overflow in negation");
  return ExtInt(-a.value_);
}

ExtInt scale(ExtNat k, ExtInt c) {
  if (k.is_inf()) {
    if (c.inf_) return c;
    return c.value_ > 0 ? ExtInt::inf() : ExtInt(0);
  }
  if (c.inf_) return k.is_zero() ? ExtInt(0) : c;
  if (k.value() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()))
    throw ArithmeticError("multiplicity too large");
  return ExtInt(checked_mul(static_cast<std::int64_t>(k.value()), c.value_));
}

std::string ExtInt::to_string() const { return inf_ ? "inf" : std::to_string(value_); }

}  // namespace amort
