#ifndef AMORT_SPLAY_HPP
#define AMORT_SPLAY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "amort/ext.hpp"
#include "amort/la_ast.hpp"
#include "amort/la_interp.hpp"

// Harness around the splay-tree split program. A splay tree is a value of
// type tree(exists a. !^inf_a nat) whose node at a subtree of size m holds
// phi(m) credits, phi(m) being the number of binary digits of m.
namespace amort::splay {

std::uint64_t phi(std::uint64_t m);
/// 1 + 2 phi(m).
std::uint64_t split_bound(std::uint64_t m);

la::Type elem_type();
la::Type tree_type();
/// The pivot/key argument: save[inf,0] k.
la::Term key(std::uint64_t k);

/// Empty string when t is a splay tree; otherwise the first violation of
/// the credit, order or cached-size invariant.
std::string invariant_violation(const la::Term& t);
/// Throws InvariantViolation.
void require_invariant(const la::Term& t);

std::uint64_t size_of(const la::Term& t);
/// Total credits stored in t.
std::uint64_t credits_of(const la::Term& t);
/// In-order keys.
std::vector<std::uint64_t> keys_of(const la::Term& t);

struct InsertOutcome {
  la::Term tree;
  la::CostPair cost;
};

InsertOutcome insert(const la::Term& t, std::uint64_t k);
la::Term build(const std::vector<std::uint64_t>& keys);

struct SplitOutcome {
  la::Term small;
  la::Term big;
  la::CostPair cost;
  /// Cost component of the extracted split applied to the potential of t.
  ExtInt extracted;
};

SplitOutcome split(const la::Term& t, std::uint64_t pivot);

/// Counts of the one-rotation inequality over every subtree-size split.
struct RotationCheck {
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::string first_failure;
};

/// For each rotation shape with subtree sizes summing to at most max_size,
/// checks 1 + phi(s') + phi(t') - phi(s) - phi(t) <= 1 + 2 phi(t) and the
/// inductive form where the recursive call contributes its own bound.
RotationCheck check_rotations(std::uint64_t max_size);

struct SplayTrial {
  std::uint64_t size = 0;
  std::uint64_t pivot = 0;
  la::CostPair cost;
  std::uint64_t bound = 0;
  ExtInt extracted;
  bool ok = true;
  std::string detail;
};

struct SequenceCheck {
  std::size_t operations = 0;
  std::uint64_t ticks = 0;
  /// Sum over inserts of 1 + 2 phi(n) + phi(n + 1), plus the starting
  /// credits, minus the credits left in the final tree.
  std::int64_t allowance = 0;
  std::uint64_t plain_sum = 0;  // sum of 1 + 2 phi(n) alone
  bool ok = true;
};

struct SplayOptions {
  std::uint64_t max_size = 64;
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  std::size_t sequence_ops = 32;
};

struct SplayReport {
  std::vector<SplayTrial> trials;
  RotationCheck rotations;
  SequenceCheck sequence;

  bool ok() const;
  std::string table() const;
  /// "size,n,r,bound,verdict" then one line per trial.
  std::string records() const;
  std::string summary() const;
};

SplayReport check_splay(const SplayOptions& opts = {});

}  // namespace amort::splay

#endif  // AMORT_SPLAY_HPP
