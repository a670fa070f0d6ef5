#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "amort/corpus.hpp"
#include "amort/errors.hpp"
#include "amort/la_typecheck.hpp"
#include "amort/splay.hpp"
#include "support.hpp"

using namespace amort;

namespace {

std::vector<std::uint64_t> shuffled_evens(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint64_t> keys(n);
  std::iota(keys.begin(), keys.end(), 0);
  std::shuffle(keys.begin(), keys.end(), rng);
  for (auto& k : keys) k *= 2;
  return keys;
}

std::uint64_t binary_digits(std::uint64_t m) {
  std::uint64_t d = 0;
  while (m) {
    ++d;
    m >>= 1;
  }
  return d;
}

}  // namespace

TEST_SUITE("splay potential") {
  TEST_CASE("digit counts") {
    CHECK(splay::phi(0) == 0);
    CHECK(splay::phi(1) == 1);
    CHECK(splay::phi(2) == 2);
    CHECK(splay::phi(3) == 2);
    CHECK(splay::phi(4) == 3);
    CHECK(splay::split_bound(1) == 3);
    for (std::uint64_t m = 0; m < 300; ++m) {
      CHECK(splay::phi(m) == binary_digits(m));
      CHECK(splay::split_bound(m) == 1 + 2 * binary_digits(m));
    }
  }

  TEST_CASE("one-rotation inequality over small shapes") {
    auto c = splay::check_rotations(16);
    CHECK(c.instances > 100);
    CHECK(c.failures == 0);
    CHECK(c.first_failure.empty());
  }
}

TEST_SUITE("splay split") {
  TEST_CASE("the empty tree") {
    auto s = splay::split(la::tm::emp(splay::elem_type()), 3);
    CHECK(splay::size_of(s.small) == 0);
    CHECK(splay::size_of(s.big) == 0);
    CHECK(s.cost == la::CostPair{});
  }

  TEST_CASE("built trees satisfy the invariant and typecheck") {
    std::mt19937_64 rng(101);
    for (std::size_t n = 0; n <= 24; ++n) {
      la::Term t = splay::build(shuffled_evens(n, rng));
      CHECK(splay::invariant_violation(t).empty());
      CHECK(splay::size_of(t) == n);
      auto keys = splay::keys_of(t);
      CHECK(std::is_sorted(keys.begin(), keys.end()));
      auto typed = la::synthesize({}, t);
      CHECK(la::type_equal(typed.type, splay::tree_type()));
      CHECK(typed.resources.bank() == CreditTerm(splay::credits_of(t)));
    }
  }

  TEST_CASE("a tree with a missing credit is caught") {
    la::Term leaf = la::tm::emp(splay::elem_type());
    la::Term poor = la::tm::pack(CreditTerm(0), splay::elem_type(), la::tm::save(ExtNat::inf(), CreditTerm(0), la::tm::numeral(4)));
    la::Term bad = la::tm::node(poor, la::tm::numeral(1), leaf, leaf);
    CHECK_FALSE(splay::invariant_violation(bad).empty());
    CHECK_THROWS_AS(splay::require_invariant(bad), InvariantViolation);
  }

  TEST_CASE("outputs partition the keys and keep the invariant") {
    std::mt19937_64 rng(102);
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t n = 1 + rng() % 20;
      auto keys = shuffled_evens(n, rng);
      la::Term t = splay::build(keys);
      std::uint64_t pivot = rng() % (2 * n + 3);
      auto s = splay::split(t, pivot);
      CAPTURE(n);
      CAPTURE(pivot);
      CHECK(splay::invariant_violation(s.small).empty());
      CHECK(splay::invariant_violation(s.big).empty());
      auto lo = splay::keys_of(s.small), hi = splay::keys_of(s.big);
      CHECK(std::all_of(lo.begin(), lo.end(), [&](auto k) { return k < pivot; }));
      CHECK(std::all_of(hi.begin(), hi.end(), [&](auto k) { return k >= pivot; }));
      CHECK(lo.size() + hi.size() == n);
      CHECK(static_cast<std::int64_t>(s.cost.n) + s.cost.r <= static_cast<std::int64_t>(splay::split_bound(n)));
      CHECK(ExtInt(static_cast<std::int64_t>(s.cost.n)) <= s.extracted + ExtInt(-s.cost.r));
      CHECK(s.extracted <= ExtInt(static_cast<std::int64_t>(splay::split_bound(n))));
      auto stored = static_cast<std::int64_t>(splay::credits_of(s.small) + splay::credits_of(s.big));
      CHECK(stored == static_cast<std::int64_t>(splay::credits_of(t)) + s.cost.r);
    }
  }

  TEST_CASE("a left-leaning path rotates twice") {
    la::Term t = splay::build({6, 4, 2});
    REQUIRE(splay::invariant_violation(t).empty());
    auto s = splay::split(t, 1);
    CHECK(splay::size_of(s.small) == 0);
    CHECK(splay::keys_of(s.big) == std::vector<std::uint64_t>{2, 4, 6});
    CHECK(static_cast<std::int64_t>(s.cost.n) + s.cost.r <= static_cast<std::int64_t>(splay::split_bound(3)));
  }
}

TEST_SUITE("splay harness") {
  TEST_CASE("small configuration") {
    splay::SplayOptions opts;
    opts.max_size = 16;
    opts.trials = 30;
    opts.seed = 5;
    opts.sequence_ops = 12;
    auto rep = splay::check_splay(opts);
    CHECK(rep.ok());
    CHECK(rep.trials.size() == 30);
    for (const auto& t : rep.trials) {
      CHECK(t.ok);
      CHECK(t.size <= 16);
      CHECK(t.bound == splay::split_bound(t.size));
    }
    CHECK(rep.sequence.ok);
    CHECK(rep.sequence.operations == 12);
    CHECK(static_cast<std::int64_t>(rep.sequence.ticks) <= rep.sequence.allowance);
    CHECK(rep.records().rfind("size,n,r,bound,verdict", 0) == 0);
    CHECK_FALSE(rep.summary().empty());
  }

  TEST_CASE("the same seed gives the same records") {
    splay::SplayOptions opts;
    opts.max_size = 12;
    opts.trials = 10;
    opts.seed = 9;
    opts.sequence_ops = 6;
    CHECK(splay::check_splay(opts).records() == splay::check_splay(opts).records());
  }
}
