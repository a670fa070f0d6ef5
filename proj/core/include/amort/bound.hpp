#ifndef AMORT_BOUND_HPP
#define AMORT_BOUND_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "amort/credit.hpp"
#include "amort/ext.hpp"
#include "amort/la_ast.hpp"
#include "amort/la_interp.hpp"
#include "amort/lc_ast.hpp"

namespace amort {

/// One closed program run against its extracted cost.
struct BoundEntry {
  std::string input;
  std::uint64_t size = 0;
  la::CostPair cost;
  ExtInt bound;  // the normalized cost component of the extraction
  bool ok = true;
  std::string detail;

  std::int64_t amortized() const { return cost.amortized(); }
};

/// Per input size: the worst observed run against the largest bound.
struct BoundRow {
  std::uint64_t size = 0;
  std::size_t inputs = 0;
  std::uint64_t max_n = 0;
  std::int64_t max_amortized = 0;
  ExtInt max_bound;
  bool ok = true;
};

struct BoundReport {
  std::vector<BoundEntry> entries;

  bool ok() const;
  std::size_t failures() const;
  std::vector<BoundRow> rows() const;
  /// Aligned text, one line per entry.
  std::string table() const;
  /// "size,n,r,bound,verdict" then one line per entry.
  std::string records() const;
};

struct BoundOptions {
  la::EvalOptions eval;
  /// Also compare the result value against the extracted potential when the
  /// result type is first order.
  bool check_values = true;
};

/// Typechecks m at `bank`, evaluates it, extracts and normalizes its cost,
/// and checks n <= bound - r. With an empty bank it also checks r >= 0 and
/// n <= bound.
BoundEntry check_bound(const la::Term& m, const CreditTerm& bank = {}, const std::string& input = {},
                       std::uint64_t size = 0, const BoundOptions& opts = {});

/// Throws BoundViolation, with the evaluation trace, when e failed.
void require_bound(const BoundEntry& e, const la::Term& m);

/// Whether the value v of type a is bounded by the canonical potential p.
/// Returns true without comparing at higher types; `why` gets the first
/// mismatch.
bool value_bounded(const la::Term& v, const lc::Term& p, const la::Type& a, std::string* why = nullptr);

bool first_order(const la::Type& a);

}  // namespace amort

#endif  // AMORT_BOUND_HPP
