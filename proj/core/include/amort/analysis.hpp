#ifndef AMORT_ANALYSIS_HPP
#define AMORT_ANALYSIS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "amort/bound.hpp"
#include "amort/syntax.hpp"

namespace amort::analysis {

/// Cost of a definition applied to an argument of the given size, read off
/// the preorder interpretation of its extraction.
struct SolveRow {
  std::uint64_t size = 0;
  ExtInt cost;
};

/// Whether the definition is a function whose argument is measured by a
/// single size (a natural or a list).
bool solvable(const la::Type& a);

/// Rows for size lo..hi. Throws Unsupported if the definition is not solvable.
std::vector<SolveRow> solve(const syntax::ProgramFile& p, const std::string& def, std::uint64_t lo,
                            std::uint64_t hi);

/// Aligned table with one column per definition.
std::string solve_table(const std::vector<std::string>& defs, const std::vector<std::vector<SolveRow>>& columns);

/// Inputs of the given size for an argument type: the numeral for nat,
/// every bit list of that length for the counter's bit types, and a list of
/// zeros for other lists of naturals or units.
std::vector<std::pair<std::string, la::Term>> inputs_of_size(const la::Type& arg, std::uint64_t size);

/// Parses "LO..HI" or a single number.
bool parse_range(const std::string& text, std::uint64_t& lo, std::uint64_t& hi);

/// Applies the definition to every input of every size in lo..hi and checks
/// each run against its extracted bound.
BoundReport verify(const syntax::ProgramFile& p, const std::string& def, std::uint64_t lo, std::uint64_t hi,
                   const BoundOptions& opts = {});

}  // namespace amort::analysis

#endif  // AMORT_ANALYSIS_HPP
