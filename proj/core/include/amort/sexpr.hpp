#ifndef AMORT_SEXPR_HPP
#define AMORT_SEXPR_HPP

#include <string>
#include <vector>

namespace amort::sx {

/// An atom or a parenthesized list, with the source position of its first
/// character.
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  int line = 1;
  int column = 1;

  static SExpr make_atom(std::string text);
  static SExpr make_list(std::vector<SExpr> items);

  bool is_atom(const char* text) const { return !is_list && atom == text; }
  /// The atom naming a list's head, or "" for atoms and empty lists.
  const std::string& head() const;
};

/// Reads every top-level expression. `#` starts a line comment unless it
/// is immediately followed by a digit, '-' or "inf" (cost literals).
std::vector<SExpr> read_all(const std::string& text);
/// Reads exactly one expression.
SExpr read_one(const std::string& text);

std::string write_flat(const SExpr& e);
/// Breaks lists that do not fit in `width` columns, indenting by two.
std::string write_pretty(const SExpr& e, std::size_t width = 100);

}  // namespace amort::sx

#endif  // AMORT_SEXPR_HPP
