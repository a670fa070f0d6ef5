#include "doctest.h"

#include "amort/errors.hpp"
#include "amort/fuzz.hpp"
#include "amort/la_interp.hpp"
#include "amort/la_typecheck.hpp"
#include "support.hpp"

using namespace amort;
using test::bank;
using test::term;
using test::type;

namespace {

const ExtNat inf = ExtNat::inf();

// Closed, finitely banked terms from the generator.
std::vector<std::pair<la::Term, la::TypingResult>> generated(std::size_t count, std::uint64_t seed) {
  fuzz::Generator gen(seed);
  std::vector<std::pair<la::Term, la::TypingResult>> out;
  while (out.size() < count) {
    la::Term m = gen.term(gen.type(2));
    try {
      auto r = la::synthesize({}, m);
      if (r.resources.bank().is_closed() && !r.resources.bank().constant().is_inf()) out.emplace_back(m, r);
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("typing rules") {
  TEST_CASE("variables use themselves once") {
    la::TypingContext ctx = la::TypingContext{}.with_var("x", la::ty::nat());
    auto r = la::synthesize(ctx, term("x"));
    CHECK(la::type_equal(r.type, la::ty::nat()));
    CHECK(r.resources == ResourceTerm::use("x"));
    CHECK_NOTHROW(la::check(ctx, ResourceTerm::use("x"), term("x"), la::ty::nat()));
  }

  TEST_CASE("save at infinity inflates finite resources") {
    la::TypingContext ctx = la::TypingContext{}.with_var("f", type("(-o 1 nat)"));
    auto inner = la::synthesize(ctx, term("(spend[3] (pair (f unit) (f unit)))"));
    CHECK(inner.resources == ResourceTerm::use("f", 2) + bank(3));
    auto r = la::synthesize(ctx, term("(save[inf,0] (spend[3] (pair (f unit) (f unit))))"));
    CHECK(r.resources == ResourceTerm::use("f", inf) + bank(inf));
  }

  TEST_CASE("spend demands its credits from the bank") {
    auto r = la::synthesize({}, term("(spend[1] (tick 0))"));
    CHECK(la::type_equal(r.type, la::ty::nat()));
    CHECK(r.resources == bank(1));
  }

  TEST_CASE("create pays toward later spends") {
    la::Term m = term("(create[1] (spend[2] (tick 0)))");
    CHECK(la::synthesize({}, m).resources == bank(1));
    CHECK_NOTHROW(la::check({}, bank(2), m, la::ty::nat()));
    CHECK_NOTHROW(la::check({}, bank(1), m, la::ty::nat()));
    CHECK_THROWS_AS(la::check({}, bank(0), m, la::ty::nat()), InsufficientResources);
    CHECK(la::synthesize({}, term("(create[2] (spend[1] (tick 0)))")).resources == bank(0));
  }

  TEST_CASE("a spending recursor step needs an infinite bank") {
    la::Term m = term(
        "(nrec 7 (lam u 1 0) (save[inf,0] (lam q (* nat (-o 1 nat)) (spend[1] 0))))");
    CHECK(la::synthesize({}, m).resources.bank().constant().is_inf());
    try {
      la::check({}, bank(1), m, la::ty::nat());
      FAIL("expected a deficit");
    } catch (const InsufficientResources& e) {
      CHECK(e.deficit().bank().constant().is_inf());
    }
  }

  TEST_CASE("save multiplies the body's resources and adds its credit") {
    la::TypingContext ctx = la::TypingContext{}.with_var("x", la::ty::nat());
    auto r = la::synthesize(ctx, term("(save[3,2] (spend[1] x))"));
    CHECK(la::type_equal(r.type, type("(! 3 2 nat)")));
    CHECK(r.resources == ResourceTerm::use("x", 3) + bank(5));
  }

  TEST_CASE("additive forms take the larger branch") {
    auto r = la::synthesize({}, term("(with (spend[2] 0) (spend[3] 1))"));
    CHECK(r.resources == bank(3));
    auto c = la::synthesize({}, term("(case (inl 1 unit) (x (spend[1] 0)) (y (spend[4] 0)))"));
    CHECK(c.resources == bank(4));
  }

  TEST_CASE("unpack brings the packed credits into scope") {
    la::Term m = term(
        "(unpack (a x) (pack[2] (exists b (! 1 b 1)) (save[1,2] unit)) (transfer u x (spend[a] (tick 0))))");
    auto r = la::synthesize({}, m);
    CHECK(la::type_equal(r.type, la::ty::nat()));
    CHECK(r.resources == bank(2));
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(la::synthesize({}, term("(save[0,1] unit)")), NonPositiveMultiplicity);
    CHECK_THROWS_AS(la::synthesize({}, term("y")), UnboundVariable);
    CHECK_THROWS_AS(la::synthesize({}, term("(fst (pair 1 2))")), TypeMismatch);
    CHECK_THROWS_AS(la::synthesize({}, term("(save[1,a] unit)")), IllFormedCredit);
    CHECK_THROWS_AS(la::synthesize({}, term("(lam x nat (pair x x))")), Error);
    CHECK_THROWS_AS(la::check({}, {}, term("0"), la::ty::unit()), TypeMismatch);
    CHECK_THROWS_AS(la::check_type({}, type("(! 0 0 nat)")), NonPositiveMultiplicity);
  }
}

TEST_SUITE("fusion laws") {
  TEST_CASE("every witness checks with no credits") {
    auto ws = la::fusion_witnesses();
    CHECK(ws.size() == 18);
    for (const auto& w : ws) {
      CAPTURE(w.name);
      CHECK_NOTHROW(la::check({}, {}, w.term, w.type));
    }
  }

  TEST_CASE("named instances") {
    auto find = [](const std::string& name) {
      for (const auto& w : la::fusion_witnesses())
        if (w.name == name) return w;
      FAIL("missing witness " << name);
      return la::FusionWitness{};
    };
    auto nest = find("nest-fuse(2,1,1,1)");
    CHECK(la::type_equal(nest.type, type("(-o (! 2 3 nat) (! 2 1 (! 1 1 nat)))")));
    auto tensor = find("tensor-split(1,1,1)");
    CHECK(la::type_equal(tensor.type->a, type("(! 1 2 (* nat (+ 1 1)))")));
    auto plus = find("plus-split(1,0)");
    CHECK(la::type_equal(plus.type, type("(-o (! 1 0 (+ nat (+ 1 1))) (+ (! 1 0 nat) (! 1 0 (+ 1 1))))")));
  }
}

TEST_SUITE("structural properties") {
  TEST_CASE("resource weakening") {
    test::Draw d(21);
    for (const auto& [m, r] : generated(300, 21)) {
      ResourceTerm more = r.resources + bank(d.below(3));
      CHECK_NOTHROW(la::check({}, more, m, r.type));
    }
  }

  TEST_CASE("synthesis is minimal") {
    std::size_t probed = 0;
    for (const auto& [m, r] : generated(300, 22)) {
      auto need = r.resources.bank().constant();
      CHECK_NOTHROW(la::check({}, r.resources, m, r.type));
      if (need.is_zero()) continue;
      ++probed;
      CHECK_THROWS_AS(la::check({}, bank(need.value() - 1), m, r.type), InsufficientResources);
    }
    CHECK(probed > 20);
  }

  TEST_CASE("unused variables cost nothing") {
    la::TypingContext ctx = la::TypingContext{}.with_var("unused", type("(! 2 1 nat)"));
    for (const auto& [m, r] : generated(200, 23)) {
      auto wide = la::synthesize(ctx, m);
      CHECK(wide.resources == r.resources);
      CHECK(la::type_equal(wide.type, r.type));
    }
  }

  TEST_CASE("substitution") {
    fuzz::Generator gen(24);
    std::size_t tried = 0;
    for (int i = 0; i < 2000 && tried < 150; ++i) {
      la::Type a = gen.type(1), b = gen.type(1);
      la::Term f = gen.term(la::ty::lolli(a, b));
      la::Term arg = gen.term(a);
      if (f->kind != la::TermKind::Lam) continue;
      la::TypingContext ctx = la::TypingContext{}.with_var(f->x, a);
      la::TypingResult body, val;
      try {
        body = la::synthesize(ctx, f->sub[0]);
        val = la::synthesize({}, arg);
      } catch (const Error&) {
        continue;
      }
      ++tried;
      ResourceTerm expect = resource_subst(body.resources, f->x, val.resources);
      CHECK_NOTHROW(la::check({}, expect, la::subst(f->sub[0], f->x, arg), body.type));
    }
    CHECK(tried >= 100);
  }

  TEST_CASE("credit substitution") {
    la::TypingContext ctx = la::TypingContext{}.with_credit("a");
    const char* samples[] = {
        "(spend[a] (tick 0))",
        "(create[a+1] (save[2,a] unit))",
        "(pack[a] (exists b (! 1 b 1)) (save[1,a] unit))",
        "(save[inf,0] (lam x (! 1 a nat) (transfer y x (spend[a] y))))",
        "(with (spend[2a] 0) (spend[a+3] 1))",
    };
    for (const char* text : samples) {
      CAPTURE(text);
      la::Term m = term(text);
      auto open = la::synthesize(ctx, m);
      for (std::uint64_t c = 0; c < 5; ++c) {
        la::Term closed = la::subst_credit(m, "a", CreditTerm(c));
        ResourceTerm want = open.resources.subst_credit("a", CreditTerm(c));
        CHECK_NOTHROW(la::check({}, want, closed, la::subst_credit(open.type, "a", CreditTerm(c))));
      }
    }
  }

  TEST_CASE("natural number values need no credits") {
    for (std::uint64_t n = 0; n < 50; ++n) CHECK(la::synthesize({}, la::tm::numeral(n)).resources.is_zero());
    std::size_t seen = 0;
    for (const auto& [m, r] : generated(300, 25)) {
      if (r.type->kind != la::TypeKind::Nat) continue;
      ++seen;
      auto v = la::eval(m).value;
      CHECK_NOTHROW(la::check({}, {}, v, la::ty::nat()));
    }
    CHECK(seen > 10);
  }
}
