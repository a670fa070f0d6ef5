#ifndef AMORT_LC_AST_HPP
#define AMORT_LC_AST_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "amort/credit.hpp"
#include "amort/ext.hpp"

// The recurrence language: a structural lambda calculus with a cost type C
// (integers with +inf), a credit-amount type $ (naturals), naturals, lists
// and trees with primitive recursors.
namespace amort::lc {

enum class TypeKind { Cost, Credit, Unit, Nat, Prod, Sum, Arrow, List, Tree };

struct TypeNode;
using Type = std::shared_ptr<const TypeNode>;

struct TypeNode {
  TypeKind kind;
  Type a;
  Type b;
};

namespace ty {
Type cost();
Type credit();
Type unit();
Type nat();
Type prod(Type a, Type b);
Type sum(Type a, Type b);
Type arrow(Type a, Type b);
Type list(Type a);
Type tree(Type a);
}  // namespace ty

bool type_equal(const Type& a, const Type& b);
std::string show(const Type& t);

enum class Kind {
  Var, Lam, App,
  Pair, Fst, Snd,
  Inl, Inr, Case,
  Unit,
  Zero, Succ, NRec,
  Nil, Cons, LRec,
  Emp, Node, TreeRec,
  CostConst, CostAdd, CostMax, CostScale, CostNeg,
  CreditConst, CreditAdd, CreditScale, ToCost,
};

const char* kind_name(Kind k);

struct Node;
using Term = std::shared_ptr<const Node>;

// Child layout:
//   Lam x:ty. sub0            Case sub0 of inl x => sub1 | inr y => sub2
//   Inl/Inr: ty is the other summand; Nil/Emp: ty is the element type
//   NRec/LRec sub0 sub1 sub2  TreeRec sub0 sub1..sub4
//   Node sub0 (elem) sub1 (size) sub2 sub3
//   CostConst: cost; CreditConst: amount; CostScale/CreditScale: mult * sub0
struct Node {
  Kind kind;
  std::string x;
  std::string y;
  Type ty;
  ExtInt cost;
  ExtNat amount;
  ExtNat mult{1};
  std::vector<Term> sub;
};

namespace tm {
Term var(std::string x);
Term lam(std::string x, Type t, Term body);
Term app(Term f, Term a);
Term app(Term f, std::initializer_list<Term> args);
Term pair(Term a, Term b);
Term fst(Term m);
Term snd(Term m);
Term inl(Type other, Term m);
Term inr(Type other, Term m);
Term case_(Term m, std::string x, Term l, std::string y, Term r);
Term unit();
Term zero();
Term succ(Term m);
Term numeral(std::uint64_t n);
Term nrec(Term m, Term base, Term step);
Term nil(Type elem);
Term cons(Term h, Term t);
Term lrec(Term m, Term base, Term step);
Term emp(Type elem);
Term node(Term elem, Term size, Term left, Term right);
Term treerec(Term m, Term base, Term left_emp, Term right_emp, Term both);
Term cost(ExtInt c);
Term add(Term a, Term b);
Term max(Term a, Term b);
Term scale(ExtNat k, Term m);
Term neg(Term m);
Term credit(ExtNat c);
Term credit_add(Term a, Term b);
Term credit_scale(ExtNat k, Term m);
Term to_cost(Term m);
/// A credit term as a $-typed expression over $-variables.
Term credit_term(const CreditTerm& c);
}  // namespace tm

std::set<std::string> free_vars(const Term& m);
bool alpha_equal(const Term& a, const Term& b);
/// Capture-avoiding E[E'/x].
Term subst(const Term& e, const std::string& x, const Term& v);
std::size_t term_size(const Term& m);
std::string show(const Term& m);

/// Numeral value of succ^n(zero), if m is one.
bool numeral_value(const Term& m, std::uint64_t& out);

}  // namespace amort::lc

#endif  // AMORT_LC_AST_HPP
