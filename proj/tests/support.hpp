#ifndef AMORT_TESTS_SUPPORT_HPP
#define AMORT_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "amort/credit.hpp"
#include "amort/la_ast.hpp"
#include "amort/lc_ast.hpp"
#include "amort/syntax.hpp"

namespace amort::test {

inline la::Term term(const std::string& text) { return syntax::parse_la_term(text); }
inline la::Type type(const std::string& text) { return syntax::parse_la_type(text); }
inline lc::Term rterm(const std::string& text) { return syntax::parse_lc_term(text); }
inline lc::Type rtype(const std::string& text) { return syntax::parse_lc_type(text); }

inline ResourceTerm bank(ExtNat n) { return ResourceTerm::credits(CreditTerm(n)); }

// Small random draws shared by the property tests.
class Draw {
public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

  ExtNat ext_nat(std::uint64_t hi = 5) {
    if (below(8) == 0) return ExtNat::inf();
    return below(hi + 1);
  }

  CreditTerm credit(const std::vector<std::string>& vars = {"a", "b"}) {
    CreditTerm c(below(4));
    for (const auto& v : vars)
      if (below(2)) c = c + CreditTerm::var(v, below(3) + 1);
    return c;
  }

  ResourceTerm resource(const std::vector<std::string>& vars = {"x", "y", "z"}) {
    ResourceTerm f = ResourceTerm::credits(below(6) == 0 ? CreditTerm(ExtNat::inf()) : CreditTerm(below(4)));
    for (const auto& v : vars)
      if (below(2)) f = f + ResourceTerm::use(v, ext_nat(3));
    return f;
  }

  std::mt19937_64& rng() { return rng_; }

private:
  std::mt19937_64 rng_;
};

}  // namespace amort::test

#endif  // AMORT_TESTS_SUPPORT_HPP
