#ifndef AMORT_SYNTAX_HPP
#define AMORT_SYNTAX_HPP

#include <string>
#include <utility>
#include <vector>

#include "amort/credit.hpp"
#include "amort/la_ast.hpp"
#include "amort/lc_ast.hpp"
#include "amort/sexpr.hpp"

// Concrete syntax for both languages: parenthesized prefix forms, with
// multiplicities and credit terms in square brackets on the keyword.
//
//   types   1 nat (* A B) (+ A B) (-o A B) (& A B) (list A) (tree A)
//           (! k c A) (exists a A)
//   terms   x unit 0 1 2 .. 0b 1b (lam x A M) (M N ..) (pair M N)
//           (let (x y) M N) (let[k] (x y) M N) (let x M N)
//           (inl B M) (inr A M) (case[k] M (x N1) (y N2))
//           (with M N) (fst M) (snd M) (succ M) (nrec M N1 N2)
//           (nil A) (cons M N) (list A M ..) (lrec M N1 N2)
//           (emp A) (node M S L R) (treerec M E LE RE B)
//           (tick M) (create[c] M) (spend[c] M) (save[k,c] M)
//           (transfer[k] y M N) (pack[c] (exists a A) M) (unpack (a x) M N)
//
// The recurrence language uses C, $, 1, nat, (* T U), (+ T U), (-> T U),
// (list T), (tree T) for types, cost literals #3 #-1 #inf, credit literals
// $2, and (+c E F) (max E F) (scale[k] E) (neg E) (+$ E F) (scale$[k] E)
// (toC E) for arithmetic.
namespace amort::syntax {

using TypeAliases = std::vector<std::pair<std::string, la::Type>>;

la::Type parse_la_type(const std::string& text, const TypeAliases& aliases = {});
la::Term parse_la_term(const std::string& text, const TypeAliases& aliases = {});
lc::Type parse_lc_type(const std::string& text);
lc::Term parse_lc_term(const std::string& text);

la::Type la_type_from(const sx::SExpr& e, const TypeAliases& aliases = {});
la::Term la_term_from(const sx::SExpr& e, const TypeAliases& aliases = {});
lc::Type lc_type_from(const sx::SExpr& e);
lc::Term lc_term_from(const sx::SExpr& e);

/// Types equal to an alias body print as the alias name.
sx::SExpr to_sexpr(const la::Type& t, const TypeAliases& aliases = {});
sx::SExpr to_sexpr(const la::Term& m, const TypeAliases& aliases = {});
sx::SExpr to_sexpr(const lc::Type& t);
sx::SExpr to_sexpr(const lc::Term& e);

std::string pretty(const la::Term& m, std::size_t width = 100);
std::string pretty(const lc::Term& e, std::size_t width = 100);

struct Definition {
  std::string name;
  la::Type type;
  CreditTerm bank;
  la::Term term;
  int line = 0;
};

/// Top-level forms: (type name A), (def name A M), (def name A [bank] M),
/// and optionally (main name). Earlier definitions are visible in later
/// ones by name and are spliced in by `resolve`.
struct ProgramFile {
  TypeAliases aliases;
  std::vector<Definition> defs;
  std::string main;

  const Definition* find(const std::string& name) const;
  /// The named definition with every reference to an earlier definition
  /// replaced by that definition's (resolved) term.
  la::Term resolve(const std::string& name) const;
  /// The main definition, or the last one.
  const Definition& entry() const;
};

ProgramFile parse_program(const std::string& text);
std::string print_program(const ProgramFile& p);

}  // namespace amort::syntax

#endif  // AMORT_SYNTAX_HPP
