#ifndef AMORT_LA_INTERP_HPP
#define AMORT_LA_INTERP_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "amort/la_ast.hpp"
#include "amort/la_typecheck.hpp"
#include "amort/stlc.hpp"

namespace amort::la {

/// True cost n (ticks) and net credit delta r (created minus spent).
struct CostPair {
  std::uint64_t n = 0;
  std::int64_t r = 0;

  std::int64_t amortized() const;
  friend bool operator==(const CostPair&, const CostPair&) = default;
};

struct TraceRecord {
  std::string rule;
  std::uint64_t dn = 0;
  std::int64_t dr = 0;
};

struct EvalOptions {
  /// Step budget; 0 selects the default (AMORT_FUEL or 50 million).
  std::uint64_t fuel = 0;
  bool trace = false;
};

struct EvalOutcome {
  Term value;
  CostPair cost;
  std::vector<TraceRecord> trace;
};

std::uint64_t default_fuel();

/// M evaluates to v with cost (n, r).
EvalOutcome eval(const Term& m, const EvalOptions& opts = {});

/// Drops the credit constructs and modalities; additive pairs become pairs
/// of thunks. Tick-free subterms of erased type 1 whose free variables all
/// have first-order types are replaced by the unit value.
stlc::Term erase(const DerivationPtr& d);
/// Typechecks m in the empty context and erases it.
stlc::Term erase(const Term& m);

/// The type after stripping modalities and existentials at the head.
Type strip_modalities(const Type& t);

}  // namespace amort::la

#endif  // AMORT_LA_INTERP_HPP
