#ifndef AMORT_STLC_HPP
#define AMORT_STLC_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

// The erasure target: an ordinary call-by-value lambda calculus with
// pairs, sums, naturals, lists, trees, let and tick. Binder annotations are
// dropped since the source is already typechecked.
namespace amort::stlc {

enum class Kind {
  Var, Lam, App,
  Pair, LetPair,
  Inl, Inr, Case,
  Unit,
  Zero, Succ, NRec,
  Nil, Cons, LRec,
  Emp, Node, TreeRec,
  Tick, Let,
};

struct Node;
using Term = std::shared_ptr<const Node>;

// Child layout mirrors the source language: LetPair (x,y)=sub0 in sub1,
// Case sub0 of inl x => sub1 | inr y => sub2, Let x = sub0 in sub1,
// TreeRec sub0 sub1..sub4.
struct Node {
  Kind kind;
  std::string x;
  std::string y;
  std::vector<Term> sub;
};

Term make(Kind k, std::vector<Term> sub = {}, std::string x = {}, std::string y = {});
Term var(std::string x);
Term unit();
Term lam(std::string x, Term body);
Term app(Term f, Term a);
Term pair(Term a, Term b);

bool is_value(const Term& m);
/// N[v/x] for closed v.
Term subst_closed(const Term& n, const std::string& x, const Term& v);
std::size_t count_ticks_syntactic(const Term& m);
std::string show(const Term& m);

struct StlcOutcome {
  Term value;
  std::uint64_t ticks = 0;
};

/// Call-by-value big-step evaluation counting ticks.
StlcOutcome eval(const Term& m, std::uint64_t fuel = 0);

}  // namespace amort::stlc

#endif  // AMORT_STLC_HPP
