#include "doctest.h"

#include "amort/corpus.hpp"
#include "amort/errors.hpp"
#include "amort/fuzz.hpp"
#include "amort/la_typecheck.hpp"
#include "amort/syntax.hpp"
#include "support.hpp"

using namespace amort;
using test::term;

TEST_SUITE("concrete syntax") {
  TEST_CASE("keywords carry their annotations") {
    auto m = term("(tick (create[1] unit))");
    CHECK(m->kind == la::TermKind::Tick);
    REQUIRE(m->sub.size() == 1);
    CHECK(m->sub[0]->kind == la::TermKind::Create);
    CHECK(m->sub[0]->credit == CreditTerm(1));
    CHECK(m->sub[0]->sub[0]->kind == la::TermKind::Unit);

    auto s = term("(save[inf,2] 0)");
    CHECK(s->kind == la::TermKind::Save);
    CHECK(s->mult.is_inf());
    CHECK(s->credit == CreditTerm(2));
  }

  TEST_CASE("parse errors report a position") {
    try {
      syntax::parse_program("(def f nat\n  (tick 0)\n(def g nat 0)");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(e.column() == 1);
    }
    try {
      syntax::parse_program("(def f nat 0)\n(def g nat (tick))\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() > 1);
    }
    CHECK_THROWS_AS(term("(save[1] 0)"), ParseError);
    CHECK_THROWS_AS(term("(lam x nat)"), ParseError);
    CHECK_THROWS_AS(test::type("(! 1 nat)"), ParseError);
  }

  TEST_CASE("ill-formed annotations are rejected by the checker") {
    CHECK_THROWS_AS(la::synthesize({}, term("(save[0,1] unit)")), NonPositiveMultiplicity);
  }

  TEST_CASE("printing the corpus is a fixed point of parsing") {
    for (const auto& src : corpus::sources()) {
      CAPTURE(src.name);
      auto first = syntax::parse_program(src.text);
      std::string printed = syntax::print_program(first);
      auto second = syntax::parse_program(printed);
      CHECK(syntax::print_program(second) == printed);
      REQUIRE(second.defs.size() == first.defs.size());
      for (std::size_t i = 0; i < first.defs.size(); ++i) {
        CAPTURE(first.defs[i].name);
        CHECK(second.defs[i].name == first.defs[i].name);
        CHECK(la::alpha_equal(second.defs[i].term, first.defs[i].term));
        CHECK(la::type_equal(second.defs[i].type, first.defs[i].type));
      }
    }
  }

  TEST_CASE("values survive a print and parse") {
    fuzz::Generator gen(81);
    for (int i = 0; i < 300; ++i) {
      la::Type a = gen.type(2);
      la::Term v = gen.value(a);
      std::string text = sx::write_flat(syntax::to_sexpr(v));
      CAPTURE(text);
      CHECK(la::alpha_equal(term(text), v));
      CHECK(la::type_equal(test::type(sx::write_flat(syntax::to_sexpr(a))), a));
    }
  }

  TEST_CASE("generated programs survive a pretty print and parse") {
    fuzz::Generator gen(82);
    for (int i = 0; i < 300; ++i) {
      la::Term m = gen.term(gen.type(2));
      CHECK(la::alpha_equal(term(syntax::pretty(m, 40)), m));
    }
  }

  TEST_CASE("recurrence terms survive a print and parse") {
    for (const auto& inst : fuzz::certificate_instances(200, 83)) {
      for (const auto& e : {inst.lhs, inst.rhs}) {
        std::string text = sx::write_flat(syntax::to_sexpr(e));
        CAPTURE(text);
        CHECK(lc::alpha_equal(test::rterm(text), e));
      }
    }
  }

  TEST_CASE("comments and cost literals") {
    auto forms = sx::read_all("# a comment\n(+c #1 #-2) # trailing\n#inf");
    REQUIRE(forms.size() == 2);
    CHECK(forms[0].items.size() == 3);
    CHECK(forms[0].items[2].atom == "#-2");
    CHECK(forms[1].atom == "#inf");
    CHECK(forms[1].line == 3);
  }
}
