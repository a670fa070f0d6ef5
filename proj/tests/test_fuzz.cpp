#include "doctest.h"

#include "amort/errors.hpp"
#include "amort/fuzz.hpp"
#include "amort/la_typecheck.hpp"
#include "support.hpp"

using namespace amort;

namespace {

std::size_t size_of(const la::Term& m) {
  std::size_t n = 1;
  for (const auto& s : m->sub) n += size_of(s);
  return n;
}

}  // namespace

TEST_SUITE("fuzzing") {
  TEST_CASE("the generator mostly produces well-typed programs") {
    fuzz::Generator gen(111);
    std::size_t ok = 0;
    for (int i = 0; i < 300; ++i) {
      try {
        la::synthesize({}, gen.term(gen.type(2)));
        ++ok;
      } catch (const Error&) {
      }
    }
    CHECK(ok > 200);
  }

  TEST_CASE("generated values are values of their type") {
    fuzz::Generator gen(112);
    for (int i = 0; i < 300; ++i) {
      la::Type a = gen.type(2);
      la::Term v = gen.value(a);
      CAPTURE(la::show(v));
      CHECK(la::is_value(v));
      CHECK(la::type_equal(la::synthesize({}, v).type, a));
    }
  }

  TEST_CASE("a sound checker has no violations") {
    fuzz::FuzzConfig cfg;
    cfg.count = 300;
    cfg.seed = 113;
    auto rep = fuzz::run(cfg);
    CHECK(rep.ok());
    CHECK(rep.checked > 150);
    CHECK(rep.values > 0);
    CHECK(rep.generated == rep.checked + rep.rejected);
  }

  TEST_CASE("ignoring spends is caught and shrunk") {
    fuzz::FuzzConfig cfg;
    cfg.count = 300;
    cfg.seed = 114;
    cfg.ignore_spend = true;
    auto rep = fuzz::run(cfg);
    REQUIRE_FALSE(rep.ok());
    std::size_t total = 0;
    for (const auto& [prop, n] : rep.violations_by_property) total += n;
    CHECK(total == rep.violations.size());
    for (const auto& v : rep.violations) {
      CAPTURE(la::show(v.term));
      auto again = fuzz::check_program(v.term, true);
      bool found = false;
      for (const auto& [prop, detail] : again) found = found || prop == v.property;
      CHECK(found);
      CHECK(fuzz::check_program(v.term, false).empty());
    }
    CHECK(rep.summary().find("violation") != std::string::npos);
  }

  TEST_CASE("shrinking never grows the witness") {
    la::Term m = test::term("(pair (tick (spend[2] unit)) (pair 3 (create[1] 0)))");
    auto props = fuzz::check_program(m, true);
    REQUIRE_FALSE(props.empty());
    la::Term small = fuzz::shrink(m, props.front().first, true);
    CHECK(size_of(small) <= size_of(m));
    CHECK(size_of(small) <= 3);
  }

  TEST_CASE("runs are reproducible") {
    fuzz::FuzzConfig cfg;
    cfg.count = 100;
    cfg.seed = 115;
    cfg.ignore_spend = true;
    CHECK(fuzz::run(cfg).summary() == fuzz::run(cfg).summary());
  }
}
