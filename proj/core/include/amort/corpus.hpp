#ifndef AMORT_CORPUS_HPP
#define AMORT_CORPUS_HPP

#include <optional>
#include <string>
#include <vector>

#include "amort/la_ast.hpp"
#include "amort/syntax.hpp"

// The bundled example programs: the credit-carrying binary counter, the
// same counter without credits, the credit generator, and splay-tree split.
namespace amort::corpus {

struct Source {
  std::string name;
  std::string text;
};

const std::vector<Source>& sources();
/// Throws std::out_of_range for an unknown name.
const std::string& source(const std::string& name);
/// Parsed once and cached.
const syntax::ProgramFile& program(const std::string& name);

const syntax::ProgramFile& counter();
const syntax::ProgramFile& plain_counter();
const syntax::ProgramFile& spawn();
const syntax::ProgramFile& splay();

/// The fully spliced term of a definition.
la::Term definition(const std::string& program_name, const std::string& def);

la::Type bit_type();
la::Type plain_bit_type();
/// Least significant bit first.
la::Term bit_list(const std::vector<bool>& bits);
la::Term plain_bit_list(const std::vector<bool>& bits);
/// Reads either bit representation back.
std::optional<std::vector<bool>> read_bits(const la::Term& v);
/// Every bit list of length 0..max_len, shortest first.
std::vector<std::vector<bool>> all_bit_lists(std::size_t max_len);
std::uint64_t bits_value(const std::vector<bool>& bits);

}  // namespace amort::corpus

#endif  // AMORT_CORPUS_HPP
