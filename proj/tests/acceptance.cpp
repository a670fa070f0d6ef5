// Runs every acceptance criterion and prints one PASS/FAIL line for each.
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "amort/analysis.hpp"
#include "amort/bound.hpp"
#include "amort/corpus.hpp"
#include "amort/errors.hpp"
#include "amort/extract.hpp"
#include "amort/fuzz.hpp"
#include "amort/la_interp.hpp"
#include "amort/la_typecheck.hpp"
#include "amort/leq.hpp"
#include "amort/reclang.hpp"
#include "amort/sem.hpp"
#include "amort/splay.hpp"
#include "amort/stlc.hpp"

using namespace amort;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;  // 0 for no limit
  std::function<Outcome()> body;
};

// Well-typed closed programs with a finite closed bank, shared by several
// criteria so that they look at the same terms.
struct Sample {
  la::Term term;
  la::TypingResult typing;
};

const std::vector<Sample>& generated_programs() {
  static const std::vector<Sample> programs = [] {
    std::vector<Sample> out;
    fuzz::Generator gen(2024);
    while (out.size() < 1000) {
      la::Term m = gen.term(gen.type(2));
      try {
        auto r = la::synthesize({}, m);
        const CreditTerm& a = r.resources.bank();
        if (!a.is_closed() || a.constant().is_inf()) continue;
        out.push_back({m, r});
      } catch (const Error&) {
      }
    }
    return out;
  }();
  return programs;
}

la::Term apply(const char* prog, const char* def, la::Term arg) {
  return la::tm::app(corpus::definition(prog, def), std::move(arg));
}

// Closed programs drawn from the corpus: every definition applied to
// small inputs.
std::vector<la::Term> corpus_runs() {
  std::vector<la::Term> out;
  for (const auto& bits : corpus::all_bit_lists(6)) {
    out.push_back(apply("counter", "inc", corpus::bit_list(bits)));
    out.push_back(apply("plain_counter", "inc", corpus::plain_bit_list(bits)));
  }
  for (std::uint64_t n = 0; n <= 16; ++n) out.push_back(apply("counter", "set", la::tm::numeral(n)));
  for (std::uint64_t n = 0; n <= 10; ++n) out.push_back(apply("spawn", "spawn", la::tm::numeral(n)));
  std::mt19937_64 rng(7);
  for (std::size_t n : {0, 1, 3, 8, 20}) {
    std::vector<std::uint64_t> keys(n);
    std::iota(keys.begin(), keys.end(), 0);
    std::shuffle(keys.begin(), keys.end(), rng);
    la::Term tree = splay::build(keys);
    for (std::uint64_t pivot : {0ULL, static_cast<unsigned long long>(n / 2), static_cast<unsigned long long>(n + 1)})
      out.push_back(la::tm::app(corpus::definition("splay", "split"), la::tm::pair(splay::key(pivot), tree)));
  }
  return out;
}

std::uint64_t carries_counting_to(std::uint64_t n) {
  std::vector<bool> bits;
  std::uint64_t carries = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    std::size_t j = 0;
    while (j < bits.size() && bits[j]) {
      bits[j] = false;
      ++carries;
      ++j;
    }
    if (j == bits.size())
      bits.push_back(true);
    else
      bits[j] = true;
  }
  return carries;
}

Outcome counter_amortized() {
  const auto& p = corpus::counter();
  auto inc = analysis::solve(p, "inc", 0, 100);
  auto set = analysis::solve(p, "set", 0, 100);
  for (std::uint64_t n = 0; n <= 100; ++n) {
    if (!(inc[n].cost <= ExtInt(2))) return {false, "inc at " + std::to_string(n) + " is " + inc[n].cost.to_string()};
    if (!(set[n].cost <= ExtInt(static_cast<std::int64_t>(2 * n))))
      return {false, "set at " + std::to_string(n) + " is " + set[n].cost.to_string()};
  }
  return {true, "101 sizes, inc=" + inc[100].cost.to_string() + " set(100)=" + set[100].cost.to_string()};
}

Outcome counter_true_cost() {
  for (std::uint64_t n = 0; n <= 64; ++n) {
    la::Term m = apply("counter", "set", la::tm::numeral(n));
    auto e = check_bound(m);
    std::uint64_t expect = n + carries_counting_to(n);
    std::string at = " at " + std::to_string(n);
    if (!(ExtInt(static_cast<std::int64_t>(e.cost.n)) <= e.bound))
      return {false, "ticks over extracted cost" + at};
    if (e.cost.n != expect) return {false, "ticks differ from the carry count" + at};
    if (e.cost.n > 2 * n) return {false, "ticks over 2n" + at};
  }
  return {true, "65 sizes"};
}

Outcome preservation() {
  std::size_t checked = 0, overflow = 0;
  for (const auto& s : generated_programs()) {
    la::EvalOutcome out;
    try {
      out = la::eval(s.term);
    } catch (const InfiniteCreditOverflow&) {
      ++overflow;
      continue;
    }
    ++checked;
    auto a = static_cast<std::int64_t>(s.typing.resources.bank().constant().value());
    std::int64_t left = a + out.cost.r;
    if (left < 0) return {false, "a + r < 0 for " + la::show(s.term)};
    try {
      la::check({}, ResourceTerm::credits(CreditTerm(static_cast<std::uint64_t>(left))), out.value, s.typing.type);
    } catch (const Error& e) {
      return {false, "value does not retype for " + la::show(s.term) + ": " + e.what()};
    }
  }
  return {true, std::to_string(checked) + " programs evaluated, " + std::to_string(overflow) + " overflowed"};
}

Outcome value_cost() {
  std::size_t values = 0;
  fuzz::Generator gen(2025);
  for (int i = 0; i < 1000; ++i) {
    la::Term v = gen.value(gen.type(2));
    auto out = la::eval(v);
    ++values;
    if (!(out.cost == la::CostPair{})) return {false, "nonzero cost for " + la::show(v)};
  }
  for (const auto& s : generated_programs()) {
    if (!la::is_value(s.term)) continue;
    ++values;
    if (!(la::eval(s.term).cost == la::CostPair{})) return {false, "nonzero cost for " + la::show(s.term)};
  }
  return {true, std::to_string(values) + " values"};
}

Outcome erasure() {
  std::size_t checked = 0;
  auto same = [&](const la::Term& m) {
    std::uint64_t n;
    try {
      n = la::eval(m).cost.n;
    } catch (const InfiniteCreditOverflow&) {
      return true;
    }
    ++checked;
    return stlc::eval(la::erase(m)).ticks == n;
  };
  for (const auto& m : corpus_runs())
    if (!same(m)) return {false, "tick counts differ on " + la::show(m)};
  for (const auto& s : generated_programs())
    if (!same(s.term)) return {false, "tick counts differ on " + la::show(s.term)};
  return {true, std::to_string(checked) + " programs"};
}

Outcome extraction_types() {
  std::size_t checked = 0;
  auto well_typed = [&](const la::Term& m) {
    auto r = la::synthesize({}, m);
    Complexity c = extract(r.derivation);
    ++checked;
    return lc::type_equal(lc::typecheck({}, c.term), complexity_type(r.type));
  };
  for (const auto& src : corpus::sources())
    for (const auto& d : corpus::program(src.name).defs)
      if (!well_typed(corpus::definition(src.name, d.name))) return {false, src.name + "." + d.name};
  for (const auto& m : corpus_runs())
    if (!well_typed(m)) return {false, la::show(m)};
  for (const auto& w : la::fusion_witnesses())
    if (!well_typed(w.term)) return {false, w.name};
  for (const auto& s : generated_programs())
    if (!well_typed(s.term)) return {false, la::show(s.term)};
  return {true, std::to_string(checked) + " extractions"};
}

Outcome inequality_sampling() {
  std::size_t samples = 0;
  std::size_t min_samples = SIZE_MAX;
  auto instances = fuzz::certificate_instances(500, 2026);
  for (const auto& inst : instances) {
    if (!lc::leq_check(inst.cert, inst.lhs, inst.rhs, inst.type, inst.ctx))
      return {false, "certificate rejected (" + inst.kind + ")"};
    auto verdict = sem::check_leq_sampled(inst.ctx, inst.lhs, inst.rhs, 50, 2026);
    if (!verdict.ok) return {false, inst.kind + " counterexample " + verdict.counterexample};
    samples += verdict.checked;
    min_samples = std::min(min_samples, verdict.checked);
  }
  if (min_samples < 50) return {false, "an instance had only " + std::to_string(min_samples) + " samples"};
  return {true, std::to_string(instances.size()) + " instances, " + std::to_string(samples) + " samples"};
}

Outcome fusion() {
  auto ws = la::fusion_witnesses();
  if (ws.size() != 18) return {false, std::to_string(ws.size()) + " witnesses"};
  for (const auto& w : ws) {
    try {
      la::check({}, {}, w.term, w.type);
    } catch (const Error& e) {
      return {false, w.name + ": " + e.what()};
    }
  }
  return {true, "18 witnesses"};
}

Outcome splay_bound() {
  splay::SplayOptions opts;
  opts.max_size = 64;
  opts.trials = 200;
  opts.seed = 2027;
  auto rep = splay::check_splay(opts);
  for (const auto& t : rep.trials)
    if (!t.ok) return {false, "size " + std::to_string(t.size) + " pivot " + std::to_string(t.pivot) + ": " + t.detail};
  if (!rep.sequence.ok) return {false, "insert sequence exceeded its allowance"};
  auto ok = splay::check_rotations(64);
  if (ok.failures) return {false, ok.first_failure};
  return {true, std::to_string(rep.trials.size()) + " splits, " + std::to_string(ok.instances) + " rotation shapes"};
}

Outcome plain_counter() {
  std::size_t lists = 0;
  for (const auto& bits : corpus::all_bit_lists(8)) {
    la::Term m = apply("plain_counter", "inc", corpus::plain_bit_list(bits));
    auto ticks = stlc::eval(la::erase(m)).ticks;
    ++lists;
    if (ticks != la::eval(m).cost.n) return {false, "erased and annotated tick counts differ"};
    if (ticks > bits.size() + 1) return {false, "length " + std::to_string(bits.size()) + " took " + std::to_string(ticks)};
  }
  return {true, std::to_string(lists) + " lists"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "counter amortized bound", 1.0, counter_amortized},
      {2, "counter true cost", 5.0, counter_true_cost},
      {3, "preservation bound", 60.0, preservation},
      {4, "value cost", 0, value_cost},
      {5, "erasure cost preservation", 0, erasure},
      {6, "extraction type preservation", 0, extraction_types},
      {7, "inequality soundness sampling", 0, inequality_sampling},
      {8, "fusion laws", 0, fusion},
      {9, "splay bound", 60.0, splay_bound},
      {10, "plain counter recurrence", 0, plain_counter},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.body();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds > 0 && secs > c.limit_seconds) {
      out.ok = false;
      std::ostringstream why;
      why << out.detail << "; over the " << c.limit_seconds << " s limit";
      out.detail = why.str();
    }
    if (!out.ok) ++failed;
    std::printf("%s  %2d  %-32s %8.3f s  %s\n", out.ok ? "PASS" : "FAIL", c.id, c.name, secs, out.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
