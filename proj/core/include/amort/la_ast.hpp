#ifndef AMORT_LA_AST_HPP
#define AMORT_LA_AST_HPP

#include <atomic>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "amort/credit.hpp"
#include "amort/ext.hpp"

// Abstract syntax of the affine intermediate language: types with the
// combined multiplicity/credit modality !^k_c, credit existentials, and
// terms carrying tick/create/spend/save/transfer/pack/unpack.
namespace amort::la {

enum class TypeKind { Unit, Nat, Tensor, Plus, Lolli, With, List, Tree, Bang, Exists };

struct TypeNode;
using Type = std::shared_ptr<const TypeNode>;

struct TypeNode {
  TypeKind kind;
  Type a;               // left / argument / element / body
  Type b;               // right / result
  ExtNat mult{1};       // Bang: k (never 0)
  CreditTerm credit;    // Bang: c
  std::string binder;   // Exists: alpha
};

namespace ty {
Type unit();
Type nat();
Type tensor(Type a, Type b);
Type plus(Type a, Type b);
Type lolli(Type a, Type b);
Type with(Type a, Type b);
Type list(Type a);
Type tree(Type a);
Type bang(ExtNat k, CreditTerm c, Type a);
Type exists(std::string alpha, Type a);
}  // namespace ty

/// Structural equality up to renaming of existential binders, with credit
/// terms compared in normal form.
bool type_equal(const Type& a, const Type& b);
std::set<std::string> free_credit_vars(const Type& t);
/// Capture-avoiding A[c/alpha].
Type subst_credit(const Type& t, const std::string& alpha, const CreditTerm& c);

enum class TermKind {
  Var, Lam, App,
  Pair, LetPair,
  Inl, Inr, Case,
  With, Fst, Snd,
  Unit,
  Zero, Succ, NRec,
  Nil, Cons, LRec,
  Emp, Node, TreeRec,
  Tick, Create, Spend, Save, Transfer,
  Pack, Unpack,
  Let,
};

const char* term_kind_name(TermKind k);

struct TermNode;
using Term = std::shared_ptr<const TermNode>;

// Child layout per kind (sub[i]):
//   Lam x:ty. sub0              App sub0 sub1
//   LetPair^mult (x,y)=sub0 in sub1
//   Inl/Inr: ty is the *other* summand
//   Case^mult sub0 of inl x => sub1 | inr y => sub2
//   NRec/LRec sub0 sub1 sub2    TreeRec sub0 (tree) sub1..sub4 (emp, left-empty, right-empty, both)
//   Node sub0 (elem) sub1 (size) sub2 sub3
//   Create/Spend credit sub0    Save^mult_credit sub0
//   Transfer^mult !x = sub0 to sub1
//   Pack credit as ty (an Exists type) sub0
//   Unpack (x=alpha, y=var) = sub0 in sub1
//   Let x = sub0 in sub1
/// Lazily computed free term variables. Copies start empty, so a node
/// copied and then edited never sees a stale set.
struct FreeVarCache {
  mutable std::once_flag once;
  mutable std::set<std::string> vars;

  FreeVarCache() = default;
  FreeVarCache(const FreeVarCache&) {}
  FreeVarCache& operator=(const FreeVarCache&) { return *this; }
};

/// Lazily computed value flag: 0 unknown, 1 value, 2 not a value.
struct ValueFlag {
  mutable std::atomic<signed char> state{0};

  ValueFlag() = default;
  ValueFlag(const ValueFlag&) {}
  ValueFlag& operator=(const ValueFlag&) { return *this; }
};

struct TermNode {
  TermKind kind;
  std::string x;
  std::string y;
  Type ty;
  ExtNat mult{1};
  CreditTerm credit;
  std::vector<Term> sub;
  FreeVarCache fv;
  FreeVarCache fcv;
  ValueFlag value;
};

namespace tm {
Term var(std::string x);
Term lam(std::string x, Type a, Term body);
Term app(Term f, Term arg);
Term app(Term f, std::initializer_list<Term> args);
Term pair(Term a, Term b);
Term let_pair(std::string x, std::string y, Term m, Term n, ExtNat k = 1);
Term inl(Type other, Term m);
Term inr(Type other, Term m);
Term case_(Term m, std::string x, Term n1, std::string y, Term n2, ExtNat k = 1);
Term with(Term a, Term b);
Term fst(Term m);
Term snd(Term m);
Term unit();
Term zero();
Term succ(Term m);
Term numeral(std::uint64_t n);
Term nrec(Term m, Term base, Term step);
Term nil(Type elem);
Term cons(Term h, Term t);
Term list(Type elem, const std::vector<Term>& items);
Term lrec(Term m, Term base, Term step);
Term emp(Type elem);
Term node(Term elem, Term size, Term left, Term right);
Term treerec(Term m, Term on_emp, Term on_left_emp, Term on_right_emp, Term on_both);
Term tick(Term m);
Term create(CreditTerm c, Term m);
Term spend(CreditTerm c, Term m);
Term save(ExtNat k, CreditTerm c, Term m);
Term transfer(std::string y, Term m, Term n, ExtNat k = 1);
Term pack(CreditTerm c, Type exists_type, Term m);
Term unpack(std::string alpha, std::string x, Term m, Term n);
Term let(std::string x, Term m, Term n);
}  // namespace tm

bool is_value(const Term& m);
/// Numeral value of succ^n(zero), if m is one.
std::optional<std::uint64_t> numeral_value(const Term& m);

std::set<std::string> free_vars(const Term& m);
const std::set<std::string>& free_var_set(const Term& m);
bool occurs_free(const std::string& x, const Term& m);
std::set<std::string> free_credit_vars(const Term& m);
/// Syntactic equality up to renaming of bound term and credit variables.
bool alpha_equal(const Term& a, const Term& b);
/// Capture-avoiding N[M/x].
Term subst(const Term& n, const std::string& x, const Term& m);
/// Capture-avoiding M[c/alpha] on credit annotations and type annotations.
Term subst_credit(const Term& m, const std::string& alpha, const CreditTerm& c);
bool contains_tick(const Term& m);
std::size_t term_size(const Term& m);

/// Fresh name based on `base` avoiding everything in `avoid`.
std::string fresh_name(const std::string& base, const std::set<std::string>& avoid);

std::string show(const Type& t);
std::string show(const Term& m);

}  // namespace amort::la

#endif  // AMORT_LA_AST_HPP
