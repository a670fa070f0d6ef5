#ifndef AMORT_LA_TYPECHECK_HPP
#define AMORT_LA_TYPECHECK_HPP

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "amort/credit.hpp"
#include "amort/la_ast.hpp"

namespace amort::la {

/// Delta | Gamma: credit variables in scope and typed term variables.
class TypingContext {
public:
  TypingContext() = default;

  TypingContext with_var(const std::string& x, Type a) const;
  TypingContext with_credit(const std::string& alpha) const;

  const Type* lookup(const std::string& x) const;
  bool has_credit(const std::string& alpha) const;
  bool binds(const std::string& name) const;

  const std::vector<std::string>& credit_vars() const { return credit_vars_; }
  const std::map<std::string, Type>& term_vars() const { return term_vars_; }

private:
  std::vector<std::string> credit_vars_;
  std::map<std::string, Type> term_vars_;
};

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

/// One rule application. `term` is the subject after any binder renaming
/// performed during synthesis; premises follow the child order of the term.
struct Derivation {
  std::string rule;
  Term term;
  Type type;
  ResourceTerm resources;
  std::vector<DerivationPtr> premises;
};

struct TypingResult {
  Type type;
  ResourceTerm resources;
  DerivationPtr derivation;
};

struct CheckOptions {
  /// Treat spend as free. Used only to seed the fuzzer's self-test.
  bool ignore_spend = false;
};

/// Least resources f with Delta | Gamma |-_f M : A, together with A.
TypingResult synthesize(const TypingContext& ctx, const Term& m, const CheckOptions& opts = {});

/// Succeeds iff m synthesizes a type equal to `expected` with resources
/// below `available`.
DerivationPtr check(const TypingContext& ctx, const ResourceTerm& available, const Term& m,
                    const Type& expected, const CheckOptions& opts = {});

/// Checks a type is well formed over the credit variables of ctx.
void check_type(const TypingContext& ctx, const Type& a);

struct FusionWitness {
  std::string name;
  Term term;
  Type type;
};

/// Both directions of the three fusion laws, each at three instantiations.
std::vector<FusionWitness> fusion_witnesses();

}  // namespace amort::la

#endif  // AMORT_LA_TYPECHECK_HPP
