#ifndef AMORT_LEQ_HPP
#define AMORT_LEQ_HPP

#include <memory>
#include <optional>
#include <vector>

#include "amort/lc_ast.hpp"
#include "amort/reclang.hpp"

namespace amort::lc {

enum class LeqRule {
  Refl,      // E <= E
  Trans,     // E1 <= E2, E2 <= E3
  Beta,      // reduct <= redex
  Cong,      // componentwise, at permitted positions
  Arith,     // closed arithmetic on C or $, compared by value
  MaxLeft,   // E <= max(E, E')
  MaxRight,  // E' <= max(E, E')
  MaxLub,    // E1 <= E, E2 <= E  gives  max(E1, E2) <= E
  Top,       // E <= inf at C
};

const char* rule_name(LeqRule r);

struct LeqCert;
using CertPtr = std::shared_ptr<const LeqCert>;

/// A derivation of lhs <= rhs. For Cong, premises align with the children
/// of lhs/rhs and a null premise means the children are identical.
struct LeqCert {
  LeqRule rule;
  Term lhs;
  Term rhs;
  std::vector<CertPtr> premises;
};

namespace cert {
CertPtr refl(const Term& e);
CertPtr trans(const CertPtr& a, const CertPtr& b);
/// Beta step at the root of `redex`; throws MalformedCertificate if none.
CertPtr beta(const Term& redex);
CertPtr cong(const Term& lhs, const Term& rhs, std::vector<CertPtr> premises);
CertPtr arith(const Term& lhs, const Term& rhs);
CertPtr max_left(const Term& lhs, const Term& other);
CertPtr max_right(const Term& other, const Term& rhs);
CertPtr max_lub(const CertPtr& a, const CertPtr& b);
CertPtr top(const Term& lhs);
}  // namespace cert

/// One beta/iota step at the root, if `e` is a redex.
std::optional<Term> beta_step(const Term& e);

/// Whether congruence is admitted in child position i of a term of kind k.
bool congruence_position(Kind k, std::size_t i);

/// Validates that `c` derives lhs <= rhs at type t in ctx. Throws
/// MalformedCertificate naming the failing node; returns true otherwise.
bool leq_check(const CertPtr& c, const Term& lhs, const Term& rhs, const Type& t, const Context& ctx = {});

struct Simplified {
  Term term;
  CertPtr cert;  // term <= input
};

/// Reduces every redex reachable through certifiable positions.
Simplified beta_simplify(const Term& e, std::size_t max_steps = 100000);

}  // namespace amort::lc

#endif  // AMORT_LEQ_HPP
