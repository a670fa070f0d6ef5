#include "doctest.h"

#include <bit>
#include <sstream>

#include "amort/analysis.hpp"
#include "amort/bound.hpp"
#include "amort/corpus.hpp"
#include "amort/errors.hpp"
#include "amort/extract.hpp"
#include "amort/fuzz.hpp"
#include "amort/la_interp.hpp"
#include "amort/la_typecheck.hpp"
#include "amort/reclang.hpp"
#include "support.hpp"

using namespace amort;
using test::term;

namespace {

la::Term set_of(std::uint64_t n) { return la::tm::app(corpus::definition("counter", "set"), la::tm::numeral(n)); }

}  // namespace

TEST_SUITE("bound checks") {
  TEST_CASE("a create paying for a spend") {
    auto e = check_bound(term("(create[2] (spend[1] (tick 0)))"));
    CHECK(e.cost == la::CostPair{1, 1});
    CHECK(e.bound == ExtInt(2));
    CHECK(e.ok);
  }

  TEST_CASE("setting a counter to eight") {
    auto e = check_bound(set_of(8), {}, "8", 8);
    CHECK(e.cost.n == 15);
    CHECK(e.bound == ExtInt(16));
    CHECK(e.ok);
    CHECK(e.size == 8);
  }

  TEST_CASE("ticks never exceed the extracted cost of set") {
    for (std::uint64_t n = 0; n <= 40; ++n) {
      auto e = check_bound(set_of(n));
      CHECK(e.ok);
      CHECK(e.cost.n == 2 * n - std::popcount(n));
      CHECK(e.bound == ExtInt(static_cast<std::int64_t>(2 * n)));
      CHECK(e.cost.r >= 0);
    }
  }

  TEST_CASE("values cost nothing and stay bounded") {
    fuzz::Generator gen(91);
    for (int i = 0; i < 200; ++i) {
      la::Term v = gen.value(gen.type(2));
      la::TypingResult r;
      try {
        r = la::synthesize({}, v);
      } catch (const Error&) {
        continue;
      }
      if (!r.resources.bank().is_closed() || r.resources.bank().constant().is_inf()) continue;
      auto e = check_bound(v, r.resources.bank());
      CAPTURE(la::show(v));
      CHECK(e.cost.n == 0);
      CHECK(e.ok);
    }
  }

  TEST_CASE("failed entries raise with the trace") {
    la::Term m = term("(tick (tick 0))");
    auto e = check_bound(m);
    REQUIRE(e.ok);
    CHECK_NOTHROW(require_bound(e, m));
    e.ok = false;
    e.detail = "forced";
    try {
      require_bound(e, m);
      FAIL("expected a violation");
    } catch (const BoundViolation& v) {
      CHECK(std::string(v.what()).find("tick") != std::string::npos);
    }
  }

  TEST_CASE("counter results are bounded by their potential") {
    for (std::uint64_t n = 0; n <= 10; ++n) {
      la::Term m = set_of(n);
      auto out = la::eval(m);
      auto r = la::synthesize({}, m);
      Complexity c = extract(r.derivation);
      std::string why;
      CHECK(first_order(r.type));
      CHECK(value_bounded(out.value, lc::normalize(c.potential()), r.type, &why));
      CHECK(why.empty());
    }
  }

  TEST_CASE("reports") {
    BoundReport rep;
    rep.entries.push_back(check_bound(set_of(3), {}, "3", 3));
    rep.entries.push_back(check_bound(set_of(4), {}, "4", 4));
    CHECK(rep.ok());
    CHECK(rep.failures() == 0);
    std::istringstream lines(rep.records());
    std::string line;
    std::getline(lines, line);
    CHECK(line == "size,n,r,bound,verdict");
    std::getline(lines, line);
    CHECK(line == "3,4,2,6,pass");
    auto rows = rep.rows();
    REQUIRE(rows.size() == 2);
    CHECK(rows[1].max_n == 7);
    CHECK(rows[1].max_bound == ExtInt(8));
    CHECK(rep.table().find("pass") != std::string::npos);
    rep.entries[0].ok = false;
    CHECK_FALSE(rep.ok());
    CHECK(rep.failures() == 1);
  }
}

TEST_SUITE("analysis") {
  TEST_CASE("ranges") {
    std::uint64_t lo = 9, hi = 9;
    CHECK(analysis::parse_range("0..100", lo, hi));
    CHECK(lo == 0);
    CHECK(hi == 100);
    CHECK(analysis::parse_range("7", lo, hi));
    CHECK(lo == 7);
    CHECK(hi == 7);
    CHECK_FALSE(analysis::parse_range("5..2", lo, hi));
    CHECK_FALSE(analysis::parse_range("a..b", lo, hi));
    CHECK_FALSE(analysis::parse_range("", lo, hi));
  }

  TEST_CASE("solving the counter") {
    const auto& p = corpus::counter();
    auto inc = analysis::solve(p, "inc", 0, 100);
    auto set = analysis::solve(p, "set", 0, 100);
    REQUIRE(inc.size() == 101);
    for (std::uint64_t n = 0; n <= 100; ++n) {
      CHECK(inc[n].size == n);
      CHECK(inc[n].cost <= ExtInt(2));
      CHECK(set[n].cost == ExtInt(static_cast<std::int64_t>(2 * n)));
    }
    auto table = analysis::solve_table({"inc", "set"}, {inc, set});
    CHECK(table.find("inc") != std::string::npos);
    auto plain = analysis::solve(corpus::plain_counter(), "inc", 0, 10);
    for (const auto& row : plain) CHECK(row.cost == ExtInt(static_cast<std::int64_t>(row.size + 1)));
  }

  TEST_CASE("inputs by size") {
    auto arg = la::ty::list(corpus::bit_type());
    CHECK(analysis::inputs_of_size(arg, 3).size() == 8);
    CHECK(analysis::inputs_of_size(arg, 0).size() == 1);
    auto nat = analysis::inputs_of_size(la::ty::nat(), 5);
    REQUIRE(nat.size() == 1);
    CHECK(la::numeral_value(nat[0].second) == 5);
  }

  TEST_CASE("every counter input meets its bound") {
    auto rep = analysis::verify(corpus::counter(), "inc", 0, 8);
    CHECK(rep.entries.size() == 511);
    CHECK(rep.ok());
    for (const auto& e : rep.entries) CHECK(e.cost.n <= 9);
    auto set = analysis::verify(corpus::counter(), "set", 0, 30);
    CHECK(set.ok());
    auto plain = analysis::verify(corpus::plain_counter(), "inc", 0, 6);
    CHECK(plain.ok());
  }

  TEST_CASE("amortized increments telescope to the cost of set") {
    la::Term inc = corpus::definition("counter", "inc");
    for (std::uint64_t n = 0; n <= 40; ++n) {
      la::Term counter = corpus::bit_list({});
      std::int64_t amortized = 0;
      for (std::uint64_t i = 0; i < n; ++i) {
        auto out = la::eval(la::tm::app(inc, counter));
        CHECK(out.cost.amortized() == 2);
        amortized += out.cost.amortized();
        counter = out.value;
      }
      auto whole = la::eval(set_of(n));
      CHECK(whole.cost.r >= 0);
      CHECK(static_cast<std::int64_t>(whole.cost.n) + whole.cost.r == amortized);
      CHECK(la::alpha_equal(whole.value, counter));
    }
  }
}
