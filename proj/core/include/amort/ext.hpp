#ifndef AMORT_EXT_HPP
#define AMORT_EXT_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace amort {

/// Natural numbers extended with a top element: 0 <= 1 <= ... <= inf.
///
/// Multiplication follows the resource-term identities 0 * x = 0 and
/// inf * k = inf for k > 0. Subtraction is deliberately absent; `monus`
/// is truncated subtraction and keeps inf fixed.
class ExtNat {
public:
  constexpr ExtNat() = default;
  constexpr ExtNat(std::uint64_t v) : value_(v) {}  // NOLINT: implicit by design of the arithmetic

  static constexpr ExtNat inf() {
    ExtNat n;
    n.inf_ = true;
    return n;
  }

  constexpr bool is_inf() const { return inf_; }
  constexpr bool is_zero() const { return !inf_ && value_ == 0; }
  /// Finite value; throws ArithmeticError on inf.
  std::uint64_t value() const;

  friend ExtNat operator+(ExtNat a, ExtNat b);
  friend ExtNat operator*(ExtNat a, ExtNat b);
  friend ExtNat monus(ExtNat a, ExtNat b);
  friend ExtNat max(ExtNat a, ExtNat b) { return a < b ? b : a; }
  friend ExtNat min(ExtNat a, ExtNat b) { return a < b ? a : b; }

  friend constexpr bool operator==(ExtNat a, ExtNat b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(ExtNat a, ExtNat b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const;
  static std::optional<ExtNat> parse(const std::string& s);

private:
  std::uint64_t value_ = 0;
  bool inf_ = false;
};

ExtNat ext_mul(ExtNat k, ExtNat m);

/// Integers extended with a single top element +inf. Used for costs and the
/// net credit delta. Arithmetic is overflow-checked.
class ExtInt {
public:
  constexpr ExtInt() = default;
  constexpr ExtInt(std::int64_t v) : value_(v) {}  // NOLINT

  static constexpr ExtInt inf() {
    ExtInt n;
    n.inf_ = true;
    return n;
  }
  static ExtInt from_nat(ExtNat n);

  constexpr bool is_inf() const { return inf_; }
  std::int64_t value() const;

  friend ExtInt operator+(ExtInt a, ExtInt b);
  friend ExtInt operator-(ExtInt a);  // inf stays inf (top annihilates)
  friend ExtInt max(ExtInt a, ExtInt b) { return a < b ? b : a; }
  /// k * c with inf * c = inf for c > 0 and 0 for c <= 0, keeping the map
  /// c -> k * c monotone for every k.
  friend ExtInt scale(ExtNat k, ExtInt c);

  friend constexpr bool operator==(ExtInt a, ExtInt b) {
    return a.inf_ == b.inf_ && (a.inf_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(ExtInt a, ExtInt b) {
    if (a.inf_ || b.inf_) return a.inf_ <=> b.inf_;
    return a.value_ <=> b.value_;
  }

  std::string to_string() const;

private:
  std::int64_t value_ = 0;
  bool inf_ = false;
};

inline std::ostream& operator<<(std::ostream& os, ExtNat n) { return os << n.to_string(); }
inline std::ostream& operator<<(std::ostream& os, ExtInt n) { return os << n.to_string(); }

/// Checked int64 helpers shared by the evaluators.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

}  // namespace amort

#endif  // AMORT_EXT_HPP
