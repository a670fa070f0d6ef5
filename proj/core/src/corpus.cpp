#include "amort/corpus.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "amort/errors.hpp"

namespace amort::corpus {

namespace {

const std::vector<Source> kSources = {
#include "corpus_sources.inc"
};

}  // namespace

const std::vector<Source>& sources() { return kSources; }

const std::string& source(const std::string& name) {
  for (const auto& s : kSources)
    if (s.name == name) return s.text;
  throw std::out_of_range("no bundled program named '" + name + "'");
}

const syntax::ProgramFile& program(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, syntax::ProgramFile> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, syntax::parse_program(source(name))).first;
  return it->second;
}

const syntax::ProgramFile& counter() { return program("counter"); }
const syntax::ProgramFile& plain_counter() { return program("plain_counter"); }
const syntax::ProgramFile& spawn() { return program("spawn"); }
const syntax::ProgramFile& splay() { return program("splay"); }

la::Term definition(const std::string& program_name, const std::string& def) {
  return program(program_name).resolve(def);
}

la::Type bit_type() {
  return la::ty::plus(la::ty::unit(), la::ty::bang(1, CreditTerm(1), la::ty::unit()));
}

la::Type plain_bit_type() { return la::ty::plus(la::ty::unit(), la::ty::unit()); }

la::Term bit_list(const std::vector<bool>& bits) {
  auto payload = la::ty::bang(1, CreditTerm(1), la::ty::unit());
  std::vector<la::Term> items;
  for (bool b : bits)
    items.push_back(b ? la::tm::inr(la::ty::unit(), la::tm::save(1, CreditTerm(1), la::tm::unit()))
                      : la::tm::inl(payload, la::tm::unit()));
  return la::tm::list(bit_type(), items);
}

la::Term plain_bit_list(const std::vector<bool>& bits) {
  std::vector<la::Term> items;
  for (bool b : bits)
    items.push_back(b ? la::tm::inr(la::ty::unit(), la::tm::unit())
                      : la::tm::inl(la::ty::unit(), la::tm::unit()));
  return la::tm::list(plain_bit_type(), items);
}

std::optional<std::vector<bool>> read_bits(const la::Term& v) {
  std::vector<bool> out;
  la::Term cur = v;
  while (cur->kind == la::TermKind::Cons) {
    const auto& h = cur->sub[0];
    if (h->kind == la::TermKind::Inl) out.push_back(false);
    else if (h->kind == la::TermKind::Inr) out.push_back(true);
    else return std::nullopt;
    cur = cur->sub[1];
  }
  if (cur->kind != la::TermKind::Nil) return std::nullopt;
  return out;
}

std::vector<std::vector<bool>> all_bit_lists(std::size_t max_len) {
  std::vector<std::vector<bool>> out;
  for (std::size_t len = 0; len <= max_len; ++len)
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
      std::vector<bool> bits(len);
      for (std::size_t i = 0; i < len; ++i) bits[i] = (mask >> i) & 1;
      out.push_back(std::move(bits));
    }
  return out;
}

std::uint64_t bits_value(const std::vector<bool>& bits) {
  std::uint64_t v = 0;
  for (std::size_t i = bits.size(); i-- > 0;) v = v * 2 + (bits[i] ? 1 : 0);
  return v;
}

}  // namespace amort::corpus
