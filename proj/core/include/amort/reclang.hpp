#ifndef AMORT_RECLANG_HPP
#define AMORT_RECLANG_HPP

#include <cstdint>
#include <map>
#include <string>

#include "amort/lc_ast.hpp"

namespace amort::lc {

using Context = std::map<std::string, Type>;

/// Types of every subterm, keyed by node identity. Filled by typecheck.
using TypeAnnotations = std::map<const Node*, Type>;

/// Structural typing; contexts admit weakening and contraction.
Type typecheck(const Context& ctx, const Term& e, TypeAnnotations* annotations = nullptr);

/// The branch types expected by treerec for element type `elem` and
/// result type `result`: the node view passed for a non-empty child.
Type tree_view(const Type& elem, const Type& result);

/// Call-by-need normalization of a closed term to canonical form: a
/// constant at C and $, a numeral/list/tree literal, an injection or pair of
/// canonical forms, or a closed lambda.
Term normalize(const Term& e, std::uint64_t fuel = 0);

/// Normalizes a closed term of type C to its value.
ExtInt normalize_cost(const Term& e, std::uint64_t fuel = 0);

}  // namespace amort::lc

#endif  // AMORT_RECLANG_HPP
