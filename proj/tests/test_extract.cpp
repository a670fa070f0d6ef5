#include "doctest.h"

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
using test::rtype;
using test::term;
using test::type;

namespace {

ExtInt cost_of(const std::string& text) { return lc::normalize_cost(extract({}, term(text)).cost()); }

bool typechecks(const la::Term& m) {
  auto r = la::synthesize({}, m);
  Complexity c = extract(r.derivation);
  return lc::type_equal(lc::typecheck({}, c.term), complexity_type(r.type)) && lc::type_equal(c.type, complexity_type(r.type));
}

}  // namespace

TEST_SUITE("potential types") {
  TEST_CASE("modalities are erased") {
    CHECK(lc::type_equal(potential_type(type("(! inf 3 nat)")), lc::ty::nat()));
    CHECK(lc::type_equal(potential_type(type("(exists a (! 1 a 1))")), rtype("(* $ 1)")));
    CHECK(lc::type_equal(potential_type(type("(-o 1 nat)")), rtype("(-> 1 (* C nat))")));
    CHECK(lc::type_equal(potential_type(type("(& nat 1)")), rtype("(* (* C nat) (* C 1))")));
    CHECK(lc::type_equal(complexity_type(type("(list nat)")), rtype("(* C (list nat))")));
  }

  TEST_CASE("contexts translate pointwise") {
    la::TypingContext ctx = la::TypingContext{}.with_var("x", type("nat")).with_var("y", type("(! 2 1 1)"));
    lc::Context out = extract_context(ctx);
    CHECK(out.size() == 2);
    CHECK(lc::type_equal(out.at("x"), lc::ty::nat()));
    CHECK(lc::type_equal(out.at("y"), lc::ty::unit()));
    lc::Context credits = extract_context(la::TypingContext{}.with_credit("a"));
    CHECK(lc::type_equal(credits.at("a"), lc::ty::credit()));
    CHECK(extract_context({}).empty());
  }
}

TEST_SUITE("extraction") {
  TEST_CASE("cost clauses") {
    CHECK(cost_of("(tick 0)") == ExtInt(1));
    CHECK(cost_of("(tick (tick (tick unit)))") == ExtInt(3));
    CHECK(cost_of("(create[2] (spend[1] (tick 0)))") == ExtInt(2));
    CHECK(cost_of("(spend[2] (tick 0))") == ExtInt(-1));
    CHECK(cost_of("(save[3,0] (tick 0))") == ExtInt(3));
    CHECK(cost_of("(save[inf,0] (lam x nat (tick x)))") == ExtInt(0));
    CHECK(cost_of("(save[inf,0] 4)") == ExtInt(0));
  }

  TEST_CASE("save with one copy is credit neutral") {
    const char* bodies[] = {"(tick 0)", "(create[2] (tick 1))", "(spend[1] 3)", "(pair (tick 0) (tick 1))"};
    for (const char* body : bodies) {
      CAPTURE(body);
      for (int c = 0; c < 4; ++c) {
        std::string saved = "(save[1," + std::to_string(c) + "] " + body + ")";
        CHECK(cost_of(saved) == cost_of(body));
      }
    }
  }

  TEST_CASE("counter types") {
    Complexity inc = extract({}, corpus::definition("counter", "inc"));
    lc::Type bit = rtype("(+ 1 1)");
    lc::Type want = lc::ty::prod(lc::ty::cost(),
                                 lc::ty::arrow(lc::ty::list(bit), lc::ty::prod(lc::ty::cost(), lc::ty::list(bit))));
    CHECK(lc::type_equal(lc::typecheck({}, inc.term), want));
    CHECK(lc::type_equal(inc.type, want));
  }

  TEST_CASE("counter recurrence at concrete inputs") {
    for (const auto& bits : corpus::all_bit_lists(6)) {
      la::Term run = la::tm::app(corpus::definition("counter", "inc"), corpus::bit_list(bits));
      Complexity c = extract({}, run);
      CHECK(lc::normalize_cost(c.cost()) == ExtInt(2));
    }
    for (std::uint64_t n = 0; n <= 12; ++n) {
      Complexity c = extract({}, la::tm::app(corpus::definition("counter", "set"), la::tm::numeral(n)));
      CHECK(lc::normalize_cost(c.cost()) == ExtInt(static_cast<std::int64_t>(2 * n)));
    }
  }

  TEST_CASE("spawn potential carries the credit count") {
    for (std::uint64_t n = 0; n <= 6; ++n) {
      Complexity c = extract({}, la::tm::app(corpus::definition("spawn", "spawn"), la::tm::numeral(n)));
      CHECK(lc::normalize_cost(c.cost()) == ExtInt(static_cast<std::int64_t>(n)));
      lc::Term pot = lc::normalize(c.potential());
      REQUIRE(pot->kind == lc::Kind::Pair);
      CHECK(pot->sub[0]->kind == lc::Kind::CreditConst);
      CHECK(pot->sub[0]->amount == ExtNat(n));
    }
  }

  TEST_CASE("open terms extract in the translated context") {
    la::TypingContext ctx = la::TypingContext{}.with_credit("a").with_var("x", type("(! 1 a nat)"));
    la::Term m = term("(transfer y x (spend[a] (tick y)))");
    auto r = la::synthesize(ctx, m);
    Complexity c = extract(r.derivation);
    CHECK(lc::type_equal(lc::typecheck(extract_context(ctx), c.term), complexity_type(r.type)));
  }

  TEST_CASE("types are preserved on the corpus") {
    for (const auto& src : corpus::sources())
      for (const auto& d : corpus::program(src.name).defs) {
        CAPTURE(src.name + "." + d.name);
        CHECK(typechecks(corpus::definition(src.name, d.name)));
      }
    for (const auto& w : la::fusion_witnesses()) CHECK(typechecks(w.term));
  }

  TEST_CASE("types are preserved on generated programs") {
    fuzz::Generator gen(41);
    std::size_t checked = 0;
    while (checked < 400) {
      la::Term m = gen.term(gen.type(2));
      try {
        la::synthesize({}, m);
      } catch (const Error&) {
        continue;
      }
      ++checked;
      CAPTURE(la::show(m));
      CHECK(typechecks(m));
      if (la::is_value(m)) {
        auto r = la::synthesize({}, m);
        if (r.resources.bank().is_closed() && !r.resources.bank().constant().is_inf())
          CHECK(lc::normalize_cost(extract(r.derivation).cost()) == ExtInt(0));
      }
    }
  }
}
