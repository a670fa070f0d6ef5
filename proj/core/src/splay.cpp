#include "amort/splay.hpp"

#include <algorithm>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

#include "amort/corpus.hpp"
#include "amort/errors.hpp"
#include "amort/extract.hpp"
#include "amort/reclang.hpp"

namespace amort::splay {

namespace {

const la::Term& split_term() {
  static const la::Term t = corpus::definition("splay", "split");
  return t;
}

const la::Term& insert_term() {
  static const la::Term t = corpus::definition("splay", "insert");
  return t;
}

const Complexity& split_complexity() {
  static const Complexity c = extract({}, split_term());
  return c;
}

struct Facts {
  std::uint64_t size = 0;
  std::uint64_t credits = 0;
};

// Walks t checking every invariant; keys are appended in order.
Facts walk(const la::Term& t, std::vector<std::uint64_t>& keys, std::string& err) {
  if (!err.empty()) return {};
  if (t->kind == la::TermKind::Emp) return {};
  if (t->kind != la::TermKind::Node) {
    err = "not a tree value: " + la::show(t);
    return {};
  }
  const auto& elem = t->sub[0];
  if (elem->kind != la::TermKind::Pack || elem->sub[0]->kind != la::TermKind::Save) {
    err = "element is not a packed saved key: " + la::show(elem);
    return {};
  }
  auto k = la::numeral_value(elem->sub[0]->sub[0]);
  auto cached = la::numeral_value(t->sub[1]);
  if (!k || !cached || !elem->credit.is_closed() || elem->credit.constant().is_inf()) {
    err = "malformed node: " + la::show(elem);
    return {};
  }
  Facts l = walk(t->sub[2], keys, err);
  std::size_t at = keys.size();
  keys.push_back(*k);
  Facts r = walk(t->sub[3], keys, err);
  if (!err.empty()) return {};
  Facts f{1 + l.size + r.size, 0};
  std::uint64_t c = elem->credit.constant().value();
  f.credits = l.credits + r.credits + c;
  if (*cached != f.size)
    err = "cached size " + std::to_string(*cached) + " at key " + std::to_string(*k) + ", actual " +
          std::to_string(f.size);
  else if (c != phi(f.size))
    err = "node with key " + std::to_string(*k) + " holds " + std::to_string(c) + " credits, expected " +
          std::to_string(phi(f.size));
  else if (at > 0 && keys[at - 1] >= *k)
    err = "keys out of order at " + std::to_string(*k);
  return f;
}

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

std::vector<std::uint64_t> shuffled_keys(std::mt19937_64& rng, std::uint64_t n) {
  std::vector<std::uint64_t> pool(2 * n);
  std::iota(pool.begin(), pool.end(), 0);
  for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng() % i]);
  pool.resize(n);
  return pool;
}

}  // namespace

std::uint64_t phi(std::uint64_t m) {
  std::uint64_t bits = 0;
  while (m) {
    ++bits;
    m >>= 1;
  }
  return bits;
}

std::uint64_t split_bound(std::uint64_t m) { return 1 + 2 * phi(m); }

la::Type elem_type() {
  return la::ty::exists("a", la::ty::bang(ExtNat::inf(), CreditTerm::var("a"), la::ty::nat()));
}

la::Type tree_type() { return la::ty::tree(elem_type()); }

la::Term key(std::uint64_t k) { return la::tm::save(ExtNat::inf(), CreditTerm(0), la::tm::numeral(k)); }

std::string invariant_violation(const la::Term& t) {
  std::vector<std::uint64_t> keys;
  std::string err;
  walk(t, keys, err);
  return err;
}

void require_invariant(const la::Term& t) {
  std::string err = invariant_violation(t);
  if (!err.empty()) throw InvariantViolation(err);
}

std::uint64_t size_of(const la::Term& t) {
  std::vector<std::uint64_t> keys;
  std::string err;
  return walk(t, keys, err).size;
}

std::uint64_t credits_of(const la::Term& t) {
  std::vector<std::uint64_t> keys;
  std::string err;
  return walk(t, keys, err).credits;
}

std::vector<std::uint64_t> keys_of(const la::Term& t) {
  std::vector<std::uint64_t> keys;
  std::string err;
  walk(t, keys, err);
  return keys;
}

InsertOutcome insert(const la::Term& t, std::uint64_t k) {
  auto out = la::eval(la::tm::app(la::tm::app(insert_term(), key(k)), t));
  return {out.value, out.cost};
}

la::Term build(const std::vector<std::uint64_t>& keys) {
  la::Term t = la::tm::emp(elem_type());
  for (auto k : keys) t = insert(t, k).tree;
  return t;
}

SplitOutcome split(const la::Term& t, std::uint64_t pivot) {
  la::Term arg = la::tm::pair(key(pivot), t);
  auto run = la::eval(la::tm::app(split_term(), arg));
  if (run.value->kind != la::TermKind::Pair) throw StuckTerm("split returned " + la::show(run.value));
  const Complexity& f = split_complexity();
  Complexity a = extract({}, arg);
  lc::Term cost = lc::tm::add(lc::tm::add(f.cost(), a.cost()),
                              lc::tm::fst(lc::tm::app(f.potential(), a.potential())));
  return {run.value->sub[0], run.value->sub[1], run.cost, lc::normalize_cost(cost)};
}

RotationCheck check_rotations(std::uint64_t max_size) {
  RotationCheck out;
  auto p = [](std::uint64_t m) { return static_cast<std::int64_t>(phi(m)); };
  auto note = [&out](bool good, const std::string& what) {
    ++out.instances;
    if (good) return;
    if (out.failures++ == 0) out.first_failure = what;
  };
  // Root x of size t over child y of size s; y's children have sizes i and j,
  // x's other child has size k. The recursive call runs on a subtree of
  // size `rec` and leaves `keep` of its nodes next to the rotated pair.
  for (std::uint64_t i = 0; i + 2 <= max_size; ++i)
    for (std::uint64_t j = 0; i + j + 2 <= max_size; ++j)
      for (std::uint64_t k = 0; i + j + k + 2 <= max_size; ++k) {
        std::uint64_t s = 1 + i + j, t = 2 + i + j + k;
        std::int64_t rhs = 1 + 2 * p(t);
        // Same-side rotation: recurse into the outer grandchild (size i),
        // big part of size b moves under y together with the new x.
        for (std::uint64_t b = 0; b <= i; ++b) {
          std::uint64_t t2 = 1 + j + k, s2 = 1 + b + t2;
          std::int64_t step = 1 + p(s2) + p(t2) - p(s) - p(t);
          std::int64_t whole = step + static_cast<std::int64_t>(split_bound(i));
          std::ostringstream what;
          what << "outer i=" << i << " j=" << j << " k=" << k << " b=" << b;
          note(step <= rhs, what.str());
          note(whole <= rhs, what.str() + " (with recursive bound)");
        }
        // Opposite-side rotation: recurse into the inner grandchild (size j).
        for (std::uint64_t b = 0; b <= j; ++b) {
          std::uint64_t s2 = 1 + i + (j - b), t2 = 1 + b + k;
          std::int64_t step = 1 + p(s2) + p(t2) - p(s) - p(t);
          std::int64_t whole = step + static_cast<std::int64_t>(split_bound(j));
          std::ostringstream what;
          what << "inner i=" << i << " j=" << j << " k=" << k << " b=" << b;
          note(step <= rhs, what.str());
          note(whole <= rhs, what.str() + " (with recursive bound)");
        }
      }
  return out;
}

bool SplayReport::ok() const {
  return rotations.failures == 0 && sequence.ok &&
         std::all_of(trials.begin(), trials.end(), [](const auto& t) { return t.ok; });
}

std::string SplayReport::table() const {
  std::ostringstream out;
  out << std::setw(6) << "size" << std::setw(7) << "pivot" << std::setw(6) << "n" << std::setw(6) << "r"
      << std::setw(6) << "n+r" << std::setw(7) << "bound" << std::setw(8) << "extract" << "  verdict\n";
  for (const auto& t : trials) {
    out << std::setw(6) << t.size << std::setw(7) << t.pivot << std::setw(6) << t.cost.n << std::setw(6)
        << t.cost.r << std::setw(6) << t.cost.amortized() << std::setw(7) << t.bound << std::setw(8)
        << t.extracted.to_string() << "  " << (t.ok ? "pass" : "FAIL");
    if (!t.ok) out << "  " << t.detail;
    out << "\n";
  }
  return out.str();
}

std::string SplayReport::records() const {
  std::ostringstream out;
  out << "size,n,r,bound,verdict\n";
  for (const auto& t : trials)
    out << t.size << "," << t.cost.n << "," << t.cost.r << "," << t.bound << "," << (t.ok ? "pass" : "fail")
        << "\n";
  return out.str();
}

std::string SplayReport::summary() const {
  std::size_t bad = static_cast<std::size_t>(
      std::count_if(trials.begin(), trials.end(), [](const auto& t) { return !t.ok; }));
  std::ostringstream out;
  out << "splits: " << trials.size() - bad << "/" << trials.size() << " within 1 + 2 phi(n)\n";
  out << "rotation inequality: " << rotations.instances - rotations.failures << "/" << rotations.instances
      << " instances hold";
  if (rotations.failures) out << " (first failure: " << rotations.first_failure << ")";
  out << "\n";
  out << "sequence of " << sequence.operations << " inserts: " << sequence.ticks << " ticks, allowance "
      << sequence.allowance << ", sum of split bounds " << sequence.plain_sum << " -> "
      << (sequence.ok ? "pass" : "FAIL") << "\n";
  return out.str();
}

SplayReport check_splay(const SplayOptions& opts) {
  SplayReport report;
  std::mt19937_64 rng(opts.seed);
  report.rotations = check_rotations(opts.max_size);

  for (std::size_t i = 0; i < opts.trials; ++i) {
    SplayTrial trial;
    trial.size = draw(rng, 0, opts.max_size);
    trial.pivot = draw(rng, 0, 2 * trial.size);
    la::Term t = build(shuffled_keys(rng, trial.size));
    trial.bound = split_bound(trial.size);
    std::ostringstream why;
    if (auto err = invariant_violation(t); !err.empty()) why << "input: " << err << "; ";
    SplitOutcome s = split(t, trial.pivot);
    trial.cost = s.cost;
    trial.extracted = s.extracted;
    ExtInt n(static_cast<std::int64_t>(s.cost.n));
    if (s.cost.amortized() > static_cast<std::int64_t>(trial.bound)) why << "amortized cost over bound; ";
    if (!(n <= s.extracted + ExtInt(-s.cost.r))) why << "n exceeds extracted cost - r; ";
    if (!(s.extracted <= ExtInt(static_cast<std::int64_t>(trial.bound)))) why << "extracted cost over bound; ";
    for (const auto* half : {&s.small, &s.big})
      if (auto err = invariant_violation(*half); !err.empty()) why << "output: " << err << "; ";
    auto below = keys_of(s.small), above = keys_of(s.big);
    if (size_of(s.small) + size_of(s.big) != trial.size ||
        (!below.empty() && below.back() >= trial.pivot) || (!above.empty() && above.front() < trial.pivot))
      why << "split does not partition the keys; ";
    trial.detail = why.str();
    trial.ok = trial.detail.empty();
    report.trials.push_back(std::move(trial));
  }

  SequenceCheck& seq = report.sequence;
  auto keys = shuffled_keys(rng, opts.sequence_ops + 1);
  la::Term t = build({keys[0]});
  std::int64_t allowance = static_cast<std::int64_t>(credits_of(t));
  for (std::size_t i = 1; i < keys.size(); ++i) {
    std::uint64_t n = size_of(t);
    auto out = insert(t, keys[i]);
    seq.ticks += out.cost.n;
    seq.plain_sum += split_bound(n);
    allowance += static_cast<std::int64_t>(split_bound(n) + phi(n + 1));
    if (!invariant_violation(out.tree).empty()) seq.ok = false;
    t = out.tree;
    ++seq.operations;
  }
  seq.allowance = allowance - static_cast<std::int64_t>(credits_of(t));
  seq.ok = seq.ok && static_cast<std::int64_t>(seq.ticks) <= seq.allowance;
  return report;
}

}  // namespace amort::splay
