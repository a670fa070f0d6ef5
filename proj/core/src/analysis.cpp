#include "amort/analysis.hpp"

#include <charconv>
#include <iomanip>
#include <sstream>

#include "amort/corpus.hpp"
#include "amort/errors.hpp"
#include "amort/extract.hpp"
#include "amort/la_typecheck.hpp"
#include "amort/sem.hpp"

namespace amort::analysis {

namespace {

const la::Type& argument_type(const syntax::ProgramFile& p, const std::string& def) {
  const auto* d = p.find(def);
  if (!d) throw UnboundVariable("no definition named " + def);
  if (d->type->kind != la::TypeKind::Lolli) throw Unsupported(def + " is not a function");
  return d->type->a;
}

std::string bits_label(const std::vector<bool>& bits) {
  std::string s = "[";
  for (std::size_t i = 0; i < bits.size(); ++i) s += (i ? "," : "") + std::string(bits[i] ? "1" : "0");
  return s + "]";
}

}  // namespace

bool solvable(const la::Type& a) {
  if (a->kind != la::TypeKind::Lolli) return false;
  const auto k = la::strip_modalities(a->a)->kind;
  return k == la::TypeKind::Nat || k == la::TypeKind::List;
}

std::vector<SolveRow> solve(const syntax::ProgramFile& p, const std::string& def, std::uint64_t lo,
                            std::uint64_t hi) {
  const auto* d = p.find(def);
  if (!d) throw UnboundVariable("no definition named " + def);
  if (!solvable(d->type)) throw Unsupported(def + " does not take a natural or a list");
  Complexity c = extract({}, p.resolve(def));
  sem::Val v = sem::eval(c.term);
  std::vector<SolveRow> rows;
  for (std::uint64_t n = lo; n <= hi; ++n) {
    sem::Val out = sem::apply(v->b, sem::nat(n));
    rows.push_back({n, v->a->cost + out->a->cost});
  }
  return rows;
}

std::string solve_table(const std::vector<std::string>& defs, const std::vector<std::vector<SolveRow>>& columns) {
  std::ostringstream out;
  out << std::setw(6) << "size";
  for (const auto& d : defs) out << std::setw(std::max<int>(8, static_cast<int>(d.size()) + 2)) << d;
  out << "\n";
  std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (std::size_t i = 0; i < rows; ++i) {
    out << std::setw(6) << columns.front()[i].size;
    for (std::size_t j = 0; j < columns.size(); ++j)
      out << std::setw(std::max<int>(8, static_cast<int>(defs[j].size()) + 2)) << columns[j][i].cost.to_string();
    out << "\n";
  }
  return out.str();
}

std::vector<std::pair<std::string, la::Term>> inputs_of_size(const la::Type& arg, std::uint64_t size) {
  std::vector<std::pair<std::string, la::Term>> out;
  if (arg->kind == la::TypeKind::Nat) {
    out.emplace_back(std::to_string(size), la::tm::numeral(size));
    return out;
  }
  if (arg->kind != la::TypeKind::List) throw Unsupported("no input enumeration for " + la::show(arg));
  const la::Type& elem = arg->a;
  const bool credited = la::type_equal(elem, corpus::bit_type());
  if (credited || la::type_equal(elem, corpus::plain_bit_type())) {
    if (size > 20) throw Unsupported("bit lists longer than 20 are not enumerated");
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << size); ++mask) {
      std::vector<bool> bits(size);
      for (std::uint64_t i = 0; i < size; ++i) bits[i] = (mask >> i) & 1U;
      out.emplace_back(bits_label(bits), credited ? corpus::bit_list(bits) : corpus::plain_bit_list(bits));
    }
    return out;
  }
  la::Term zero;
  if (elem->kind == la::TypeKind::Nat) zero = la::tm::numeral(0);
  else if (elem->kind == la::TypeKind::Unit) zero = la::tm::unit();
  else throw Unsupported("no input enumeration for " + la::show(arg));
  out.emplace_back("length " + std::to_string(size),
                   la::tm::list(elem, std::vector<la::Term>(size, zero)));
  return out;
}

bool parse_range(const std::string& text, std::uint64_t& lo, std::uint64_t& hi) {
  auto number = [](std::string_view s, std::uint64_t& v) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    return ec == std::errc() && ptr == s.data() + s.size() && !s.empty();
  };
  auto dots = text.find("..");
  if (dots == std::string::npos) {
    if (!number(text, lo)) return false;
    hi = lo;
    return true;
  }
  std::string_view v(text);
  return number(v.substr(0, dots), lo) && number(v.substr(dots + 2), hi) && lo <= hi;
}

BoundReport verify(const syntax::ProgramFile& p, const std::string& def, std::uint64_t lo, std::uint64_t hi,
                   const BoundOptions& opts) {
  const la::Type& arg = argument_type(p, def);
  la::Term f = p.resolve(def);
  BoundReport report;
  for (std::uint64_t n = lo; n <= hi; ++n)
    for (auto& [label, input] : inputs_of_size(arg, n)) {
      la::Term run = la::tm::app(f, input);
      CreditTerm bank = la::synthesize({}, run).resources.bank();
      report.entries.push_back(check_bound(run, bank, def + " " + label, n, opts));
    }
  return report;
}

}  // namespace amort::analysis
