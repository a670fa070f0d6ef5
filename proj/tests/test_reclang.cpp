#include "doctest.h"

#include "amort/corpus.hpp"
#include "amort/errors.hpp"
#include "amort/extract.hpp"
#include "amort/fuzz.hpp"
#include "amort/la_typecheck.hpp"
#include "amort/leq.hpp"
#include "amort/reclang.hpp"
#include "support.hpp"

using namespace amort;
using test::rterm;
using test::rtype;

namespace {

namespace C = lc::tm;

// Closed cost terms taken from extractions of generated programs.
std::vector<lc::Term> extracted_costs(std::size_t count, std::uint64_t seed) {
  fuzz::Generator gen(seed);
  std::vector<lc::Term> out;
  while (out.size() < count) {
    la::Term m = gen.term(gen.type(2));
    try {
      auto r = la::synthesize({}, m);
      if (!r.resources.bank().is_closed()) continue;
      out.push_back(extract(r.derivation).term);
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("recurrence typing") {
  TEST_CASE("arithmetic and projections") {
    CHECK(lc::type_equal(lc::typecheck({}, rterm("(+c #1 #1)")), lc::ty::cost()));
    auto proj = rterm("(lam p (* C (* C nat)) (+c (fst p) (fst (snd p))))");
    CHECK(lc::type_equal(lc::typecheck({}, proj), rtype("(-> (* C (* C nat)) C)")));
    CHECK(lc::type_equal(lc::typecheck({}, rterm("(toC $3)")), lc::ty::cost()));
    lc::Context ctx{{"k", lc::ty::credit()}};
    CHECK(lc::type_equal(lc::typecheck(ctx, rterm("(max #2 (toC (+$ k $1)))")), lc::ty::cost()));
  }

  TEST_CASE("contexts are structural") {
    lc::Context ctx{{"c", lc::ty::cost()}, {"unused", lc::ty::nat()}};
    CHECK(lc::type_equal(lc::typecheck(ctx, rterm("(+c c (+c c c))")), lc::ty::cost()));
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(lc::typecheck({}, rterm("y")), UnboundVariable);
    CHECK_THROWS_AS(lc::typecheck({}, rterm("(+c #1 $1)")), TypeMismatch);
    CHECK_THROWS_AS(lc::typecheck({}, rterm("(fst #1)")), TypeMismatch);
  }
}

TEST_SUITE("normalization") {
  TEST_CASE("examples") {
    CHECK(lc::normalize_cost(rterm("((lam x C (+c x #1)) #2)")) == ExtInt(3));
    CHECK(lc::normalize_cost(rterm("(max #-2 (scale[3] #4))")) == ExtInt(12));
    CHECK(lc::normalize_cost(rterm("(+c #inf (neg #5))")) == ExtInt::inf());
    CHECK(lc::normalize_cost(rterm("(scale[inf] #0)")) == ExtInt(0));
    CHECK(lc::normalize_cost(extract({}, test::term("(tick 0)")).cost()) == ExtInt(1));
  }

  TEST_CASE("extracted counter cost is between the ticks and the amortized bound") {
    la::Term set4 = la::tm::app(corpus::definition("counter", "set"), la::tm::numeral(4));
    ExtInt c = lc::normalize_cost(extract({}, set4).cost());
    CHECK(ExtInt(7) <= c);
    CHECK(c <= ExtInt(8));
    CHECK(c == ExtInt(8));
  }

  TEST_CASE("canonical forms keep their type") {
    for (const auto& e : extracted_costs(200, 51)) {
      lc::Type t = lc::typecheck({}, e);
      lc::Term n = lc::normalize(e);
      CHECK(lc::type_equal(lc::typecheck({}, n), t));
      CHECK(n->kind == lc::Kind::Pair);
      CHECK(n->sub[0]->kind == lc::Kind::CostConst);
    }
  }

  TEST_CASE("simplifying first does not change the value") {
    for (const auto& e : extracted_costs(200, 52)) {
      lc::Term cost = C::fst(e);
      auto s = lc::beta_simplify(cost);
      CHECK(lc::normalize_cost(s.term) == lc::normalize_cost(cost));
    }
  }
}

TEST_SUITE("inequality certificates") {
  TEST_CASE("reflexivity") {
    auto e = rterm("(+c #1 #2)");
    CHECK(lc::leq_check(lc::cert::refl(e), e, e, lc::ty::cost()));
  }

  TEST_CASE("reducts are below their redexes") {
    lc::Context ctx{{"c", lc::ty::cost()}};
    auto redex = rterm("((lam x C (+c x x)) (max c #1))");
    auto reduct = rterm("(+c (max c #1) (max c #1))");
    CHECK(lc::leq_check(lc::cert::beta(redex), reduct, redex, lc::ty::cost(), ctx));
    REQUIRE(lc::beta_step(redex));
    CHECK(lc::alpha_equal(*lc::beta_step(redex), reduct));
    CHECK_FALSE(lc::beta_step(reduct));
    CHECK_THROWS_AS(lc::cert::beta(reduct), MalformedCertificate);
  }

  TEST_CASE("congruence under a projection") {
    lc::Context ctx{{"c", lc::ty::cost()}};
    auto redex = rterm("((lam x C (pair x #0)) c)");
    auto reduct = rterm("(pair c #0)");
    auto inner = lc::cert::beta(redex);
    auto lhs = C::fst(reduct), rhs = C::fst(redex);
    CHECK(lc::leq_check(lc::cert::cong(lhs, rhs, {inner}), lhs, rhs, lc::ty::cost(), ctx));
  }

  TEST_CASE("maxima, arithmetic and top") {
    lc::Context ctx{{"c", lc::ty::cost()}, {"d", lc::ty::cost()}};
    auto c = C::var("c"), d = C::var("d");
    CHECK(lc::leq_check(lc::cert::max_left(c, d), c, C::max(c, d), lc::ty::cost(), ctx));
    CHECK(lc::leq_check(lc::cert::max_right(c, d), d, C::max(c, d), lc::ty::cost(), ctx));
    auto lub = lc::cert::max_lub(lc::cert::refl(c), lc::cert::refl(c));
    CHECK(lc::leq_check(lub, C::max(c, c), c, lc::ty::cost(), ctx));
    CHECK(lc::leq_check(lc::cert::arith(rterm("(+c #1 #1)"), rterm("#3")), rterm("(+c #1 #1)"), rterm("#3"),
                        lc::ty::cost()));
    CHECK(lc::leq_check(lc::cert::top(c), c, C::cost(ExtInt::inf()), lc::ty::cost(), ctx));
    auto chain = lc::cert::trans(lc::cert::max_left(c, d), lc::cert::top(C::max(c, d)));
    CHECK(lc::leq_check(chain, c, C::cost(ExtInt::inf()), lc::ty::cost(), ctx));
  }

  TEST_CASE("bad certificates are rejected") {
    CHECK_THROWS_AS(lc::leq_check(lc::cert::arith(rterm("#3"), rterm("#2")), rterm("#3"), rterm("#2"), lc::ty::cost()),
                    MalformedCertificate);
    auto e = rterm("#1");
    CHECK_THROWS_AS(lc::leq_check(lc::cert::refl(e), e, rterm("#2"), lc::ty::cost()), MalformedCertificate);
    lc::Context ctx{{"c", lc::ty::cost()}, {"d", lc::ty::cost()}};
    auto c = C::var("c"), d = C::var("d");
    CHECK_THROWS_AS(lc::leq_check(lc::cert::max_left(c, d), d, C::max(c, d), lc::ty::cost(), ctx),
                    MalformedCertificate);
    auto wrong = lc::cert::cong(C::neg(c), C::neg(C::max(c, d)), {lc::cert::max_left(c, d)});
    CHECK_THROWS_AS(lc::leq_check(wrong, C::neg(c), C::neg(C::max(c, d)), lc::ty::cost(), ctx), MalformedCertificate);
  }

  TEST_CASE("generated instances all check") {
    for (const auto& inst : fuzz::certificate_instances(500, 61)) {
      CAPTURE(inst.kind);
      CHECK(lc::leq_check(inst.cert, inst.lhs, inst.rhs, inst.type, inst.ctx));
    }
  }
}

TEST_SUITE("simplifier") {
  TEST_CASE("examples") {
    lc::Context ctx{{"y", lc::ty::cost()}, {"a", lc::ty::cost()}, {"b", lc::ty::nat()}};
    auto app = rterm("((lam x C x) y)");
    auto s = lc::beta_simplify(app);
    CHECK(lc::alpha_equal(s.term, rterm("y")));
    CHECK(lc::leq_check(s.cert, s.term, app, lc::ty::cost(), ctx));
    auto proj = rterm("(fst (pair a b))");
    auto p = lc::beta_simplify(proj);
    CHECK(lc::alpha_equal(p.term, rterm("a")));
    CHECK(lc::leq_check(p.cert, p.term, proj, lc::ty::cost(), ctx));
  }

  TEST_CASE("counter recurrence") {
    Complexity inc = extract({}, corpus::definition("counter", "inc"));
    auto s = lc::beta_simplify(inc.term);
    CHECK_FALSE(lc::beta_step(s.term));
    CHECK(lc::leq_check(s.cert, s.term, inc.term, inc.type));
    CHECK(lc::type_equal(lc::typecheck({}, s.term), inc.type));
  }
}
