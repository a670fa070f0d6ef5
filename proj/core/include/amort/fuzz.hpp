#ifndef AMORT_FUZZ_HPP
#define AMORT_FUZZ_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "amort/la_ast.hpp"
#include "amort/leq.hpp"
#include "amort/lc_ast.hpp"
#include "amort/reclang.hpp"

// Random well-typed closed programs and the properties every one of them
// must satisfy: resources are preserved by evaluation, values cost nothing,
// erasure keeps the tick count, extraction is well typed, and the extracted
// cost bounds the run.
namespace amort::fuzz {

struct GenConfig {
  std::size_t max_depth = 6;
  /// Probability of stopping at a value before max_depth.
  double leaf_bias = 0.3;
};

/// Type-directed generator. Terms are closed; most of them typecheck, the
/// rest are rejected by the caller.
class Generator {
public:
  Generator(std::uint64_t seed, GenConfig cfg = {});

  la::Type type(std::size_t depth = 2);
  la::Term term(const la::Type& t);
  /// A closed value of type t.
  la::Term value(const la::Type& t);

  std::mt19937_64& rng() { return rng_; }

private:
  struct Var {
    std::string name;
    la::Type type;
  };
  struct Scope {
    std::vector<Var> vars;
    bool bankless = false;  // no construct may demand credits
  };

  la::Term gen(const la::Type& t, std::size_t depth, Scope& scope);
  la::Term gen_value(const la::Type& t, std::size_t depth, bool bankless);
  la::Term wrap_effects(la::Term m, const la::Type& t, std::size_t depth, Scope& scope);
  std::optional<la::Term> use_var(const la::Type& t, std::size_t depth, Scope& scope);
  std::string fresh(const char* stem);
  std::uint64_t below(std::uint64_t n);
  bool chance(double p);

  std::mt19937_64 rng_;
  GenConfig cfg_;
  std::size_t counter_ = 0;
};

struct Violation {
  std::string property;
  la::Term term;  // shrunk witness
  std::string detail;
};

struct FuzzConfig {
  std::size_t count = 1000;
  std::uint64_t seed = 1;
  GenConfig gen;
  /// Typecheck with spend treated as free, to confirm the properties catch
  /// an unsound checker.
  bool ignore_spend = false;
  bool shrink = true;
};

struct FuzzReport {
  std::size_t generated = 0;
  std::size_t rejected = 0;
  std::size_t checked = 0;
  std::size_t values = 0;
  std::map<std::string, std::size_t> violations_by_property;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

/// The properties of one closed, typechecked program. Returns the names of
/// violated properties with details.
std::vector<std::pair<std::string, std::string>> check_program(const la::Term& m, bool ignore_spend = false);

/// Smallest subterm-replacement of m that still violates `property`.
la::Term shrink(const la::Term& m, const std::string& property, bool ignore_spend = false);

FuzzReport run(const FuzzConfig& cfg);

/// A certificate together with the inequality it proves.
struct CertInstance {
  std::string kind;
  lc::Context ctx;
  lc::Term lhs;
  lc::Term rhs;
  lc::Type type;
  lc::CertPtr cert;
};

/// Random beta, congruence, arithmetic and max instances over a context of
/// cost and natural-number variables.
std::vector<CertInstance> certificate_instances(std::size_t count, std::uint64_t seed);

}  // namespace amort::fuzz

#endif  // AMORT_FUZZ_HPP
