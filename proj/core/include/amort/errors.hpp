#ifndef AMORT_ERRORS_HPP
#define AMORT_ERRORS_HPP

#include <stdexcept>
#include <string>

#include "amort/credit.hpp"

namespace amort {

// Every failure raised by the library derives from Error. The kind tag lets
// the CLI map failures onto exit codes without a catch ladder.
enum class ErrorKind {
  Arithmetic,
  UnboundVariable,
  TypeMismatch,
  NonPositiveMultiplicity,
  IllFormedCredit,
  InsufficientResources,
  StuckTerm,
  InfiniteCreditOverflow,
  FuelExhausted,
  Parse,
  MalformedCertificate,
  Unsupported,
  BoundViolation,
  InvariantViolation,
};

const char* error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

#define AMORT_DEFINE_ERROR(Name)                                      \
  class Name : public Error {                                         \
  public:                                                             \
    explicit Name(const std::string& what)                            \
        : Error(ErrorKind::Name, what) {}                             \
  };

AMORT_DEFINE_ERROR(UnboundVariable)
AMORT_DEFINE_ERROR(TypeMismatch)
AMORT_DEFINE_ERROR(NonPositiveMultiplicity)
AMORT_DEFINE_ERROR(IllFormedCredit)
AMORT_DEFINE_ERROR(StuckTerm)
AMORT_DEFINE_ERROR(InfiniteCreditOverflow)
AMORT_DEFINE_ERROR(FuelExhausted)
AMORT_DEFINE_ERROR(MalformedCertificate)
AMORT_DEFINE_ERROR(Unsupported)
AMORT_DEFINE_ERROR(BoundViolation)
AMORT_DEFINE_ERROR(InvariantViolation)

#undef AMORT_DEFINE_ERROR

class ArithmeticError : public Error {
public:
  explicit ArithmeticError(const std::string& what)
      : Error(ErrorKind::Arithmetic, what) {}
};

/// Raised by checking when the supplied resources do not dominate the
/// synthesized ones. `deficit` is the pointwise shortfall.
class InsufficientResources : public Error {
public:
  InsufficientResources(const std::string& what, ResourceTerm deficit)
      : Error(ErrorKind::InsufficientResources, what), deficit_(std::move(deficit)) {}

  const ResourceTerm& deficit() const noexcept { return deficit_; }

private:
  ResourceTerm deficit_;
};

class ParseError : public Error {
public:
  ParseError(const std::string& msg, int line, int column)
      : Error(ErrorKind::Parse, std::to_string(line) + ":" +
                                    std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}

  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

private:
  int line_;
  int column_;
};

}  // namespace amort

#endif  // AMORT_ERRORS_HPP
