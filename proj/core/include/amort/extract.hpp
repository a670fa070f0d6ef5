#ifndef AMORT_EXTRACT_HPP
#define AMORT_EXTRACT_HPP

#include "amort/la_ast.hpp"
#include "amort/la_typecheck.hpp"
#include "amort/lc_ast.hpp"
#include "amort/reclang.hpp"

namespace amort {

/// Potential type: the size-level shadow of a source type.
lc::Type potential_type(const la::Type& a);

/// Complexity type C x <A>.
lc::Type complexity_type(const la::Type& a);

/// A recurrence-language term of type C x <A>.
struct Complexity {
  lc::Term term;
  lc::Type type;  // complexity type

  lc::Term cost() const { return lc::tm::fst(term); }
  lc::Term potential() const { return lc::tm::snd(term); }
};

/// Translates a typing derivation. Multiplicities and credit annotations are
/// read off the derivation.
Complexity extract(const la::DerivationPtr& d);

/// Synthesizes a derivation for m in ctx and translates it.
Complexity extract(const la::TypingContext& ctx, const la::Term& m);

/// Credit variables become $-typed variables; term variables get their
/// potential types.
lc::Context extract_context(const la::TypingContext& ctx);

}  // namespace amort

#endif  // AMORT_EXTRACT_HPP
