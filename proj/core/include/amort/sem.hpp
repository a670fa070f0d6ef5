#ifndef AMORT_SEM_HPP
#define AMORT_SEM_HPP

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "amort/ext.hpp"
#include "amort/lc_ast.hpp"
#include "amort/reclang.hpp"

// The size-abstraction model of the recurrence language. Naturals, lists and
// credit amounts denote extended naturals (a list denotes its length), costs
// denote extended integers, and every type has a top element that absorbs
// binary max.
namespace amort::sem {

enum class Tag { Unit, Nat, Cost, Pair, Sum, Fun };
enum class Side { Left, Right, Top };

struct SemVal;
using Val = std::shared_ptr<const SemVal>;
using Fn = std::function<Val(const Val&)>;

struct SemVal {
  Tag tag;
  ExtNat nat;
  ExtInt cost;
  Val a;  // Pair: first; Sum: payload (null when side is Top)
  Val b;  // Pair: second
  Side side = Side::Top;
  Fn fn;
  bool top = false;  // Fun: the constant-top map
};

Val unit();
Val nat(ExtNat n);
Val cost(ExtInt c);
Val pair(Val a, Val b);
/// Injections coalesce: an injection of a top element is the sum's top.
Val inl(Val a);
Val inr(Val a);
Val sum_top();
Val fun(Fn f);

/// Top element of the interpretation of t.
Val top(const lc::Type& t);
bool is_top(const Val& v);
Val join(const Val& a, const Val& b);
Val apply(const Val& f, const Val& arg);
std::string show(const Val& v);

using Env = std::map<std::string, Val>;

/// Interprets e, well typed in ctx, at the environment env.
Val eval(const lc::Context& ctx, const Env& env, const lc::Term& e);
/// Closed terms.
Val eval(const lc::Term& e);

/// Case on a coalesced sum: each branch is joined with the other branch's
/// image of top.
Val scase(const Fn& on_left, const Fn& on_right, const lc::Type& left, const lc::Type& right, const Val& s);
/// Primitive recursion on an extended natural: base() at 0, and
/// base() max step(i, previous) at i+1; top at infinity.
Val snrec(const Fn& base, const Fn& step, const Val& n, const lc::Type& result);
/// As snrec, with the top element standing in for every list head.
Val slrec(const Fn& base, const Fn& step, const Val& n, const lc::Type& elem, const lc::Type& result);

/// Pointwise order; function spaces are compared at sampled arguments.
bool leq(const Val& a, const Val& b, const lc::Type& t);

/// Sample points of the interpretation of t, always including the
/// boundary elements 0, 1 and top where they exist.
std::vector<Val> samples(const lc::Type& t);

struct Verdict {
  bool ok = true;
  std::size_t checked = 0;
  std::string counterexample;
};

/// Compares both sides at `count` sampled environments (boundary
/// environments first) drawn from a seeded generator.
Verdict check_leq_sampled(const lc::Context& ctx, const lc::Term& lhs, const lc::Term& rhs,
                          std::size_t count = 50, std::uint64_t seed = 1);

/// Checks f(x) <= f(y) on each supplied pair x <= y.
Verdict check_monotone_sampled(const Val& f, const std::vector<std::pair<Val, Val>>& pairs,
                               const lc::Type& result);

/// The chain 0 <= 1 <= ... <= hi <= top of extended naturals, as adjacent pairs.
std::vector<std::pair<Val, Val>> nat_chain(std::uint64_t hi);

}  // namespace amort::sem

#endif  // AMORT_SEM_HPP
