#include "doctest.h"

#include "amort/corpus.hpp"
#include "amort/extract.hpp"
#include "amort/fuzz.hpp"
#include "amort/leq.hpp"
#include "amort/reclang.hpp"
#include "amort/sem.hpp"
#include "support.hpp"

using namespace amort;
using test::rterm;

namespace {

const ExtNat inf = ExtNat::inf();

sem::Fn constant(ExtInt c) {
  return [c](const sem::Val&) { return sem::cost(c); };
}

ExtInt as_cost(const sem::Val& v) {
  REQUIRE(v->tag == sem::Tag::Cost);
  return v->cost;
}

// Cost component of a definition's extraction applied at size n.
ExtInt cost_at(const char* prog, const char* def, ExtNat n) {
  Complexity c = extract({}, corpus::definition(prog, def));
  sem::Val v = sem::eval(c.term);
  return v->a->cost + sem::apply(v->b, sem::nat(n))->a->cost;
}

}  // namespace

TEST_SUITE("preorder semantics") {
  TEST_CASE("arithmetic and sizes") {
    CHECK(as_cost(sem::eval(rterm("(+c #1 #1)"))) == ExtInt(2));
    auto two = sem::eval(rterm("(cons #0 (cons #0 (nil C)))"));
    CHECK(two->tag == sem::Tag::Nat);
    CHECK(two->nat == ExtNat(2));
    lc::Context ctx{{"l", lc::ty::list(lc::ty::cost())}};
    for (ExtNat n : {ExtNat(0), ExtNat(3), inf}) {
      auto v = sem::eval(ctx, {{"l", sem::nat(n)}}, rterm("(cons #5 l)"));
      CHECK(v->nat == n + 1);
    }
  }

  TEST_CASE("tops absorb joins") {
    for (const char* t : {"C", "nat", "(* C nat)", "(+ 1 C)", "(-> nat C)"}) {
      lc::Type ty = test::rtype(t);
      auto top = sem::top(ty);
      CHECK(sem::is_top(top));
      for (const auto& s : sem::samples(ty)) {
        CHECK(sem::leq(s, top, ty));
        CHECK(sem::leq(sem::join(s, top), top, ty));
        CHECK(sem::leq(top, sem::join(s, top), ty));
      }
    }
  }

  TEST_CASE("case maxes each branch with the other's top") {
    lc::Type c = lc::ty::cost();
    sem::Fn ident = [](const sem::Val& v) { return v; };
    sem::Fn plus1 = [](const sem::Val& v) { return sem::cost(v->cost + ExtInt(1)); };
    auto at_left = sem::scase(ident, plus1, c, c, sem::inl(sem::cost(ExtInt::inf())));
    auto at_right = sem::scase(ident, plus1, c, c, sem::inr(sem::cost(ExtInt::inf())));
    CHECK(as_cost(at_left) == as_cost(at_right));
    CHECK(as_cost(at_left) == ExtInt::inf());

    for (std::int64_t a = -3; a < 10; ++a) {
      CHECK(as_cost(sem::scase(constant(2), constant(5), c, c, sem::inl(sem::cost(a)))) == ExtInt(5));
      CHECK(as_cost(sem::scase(constant(2), constant(5), c, c, sem::inr(sem::cost(a)))) == ExtInt(5));
    }
    lc::Type u = lc::ty::unit();
    CHECK(as_cost(sem::scase(constant(4), constant(4), u, u, sem::inl(sem::unit()))) == ExtInt(4));
  }

  TEST_CASE("natural recursion") {
    lc::Type c = lc::ty::cost();
    sem::Fn base = constant(0);
    sem::Fn step = [](const sem::Val& p) { return sem::cost(p->b->cost + ExtInt(2)); };
    CHECK(as_cost(sem::snrec(constant(7), step, sem::nat(0), c)) == ExtInt(7));
    CHECK(as_cost(sem::snrec(base, step, sem::nat(3), c)) == ExtInt(6));
    CHECK(as_cost(sem::snrec(base, step, sem::nat(inf), c)) == ExtInt::inf());
    auto chain = sem::nat_chain(30);
    sem::Val f = sem::fun([&](const sem::Val& n) { return sem::snrec(base, step, n, c); });
    CHECK(sem::check_monotone_sampled(f, chain, c).ok);
  }

  TEST_CASE("list recursion") {
    lc::Type c = lc::ty::cost();
    sem::Fn step = [](const sem::Val& p) { return sem::cost(p->b->b->cost + ExtInt(1)); };
    CHECK(as_cost(sem::slrec(constant(3), step, sem::nat(0), c, c)) == ExtInt(3));
    CHECK(as_cost(sem::slrec(constant(0), step, sem::nat(4), c, c)) == ExtInt(4));
    sem::Fn head = [](const sem::Val& p) { return p->a; };
    CHECK(as_cost(sem::slrec(constant(0), head, sem::nat(2), c, c)) == ExtInt::inf());
    sem::Val f = sem::fun([&](const sem::Val& n) { return sem::slrec(constant(0), step, n, c, c); });
    CHECK(sem::check_monotone_sampled(f, sem::nat_chain(30), c).ok);
  }

  TEST_CASE("counter recurrences solve to the amortized bounds") {
    for (std::uint64_t n = 0; n <= 100; ++n) {
      CHECK(cost_at("counter", "inc", n) == ExtInt(2));
      CHECK(cost_at("counter", "set", n) == ExtInt(static_cast<std::int64_t>(2 * n)));
    }
    CHECK(cost_at("counter", "inc", inf) == ExtInt::inf());
    for (std::uint64_t n = 0; n <= 20; ++n)
      CHECK(cost_at("plain_counter", "inc", n) == ExtInt(static_cast<std::int64_t>(n + 1)));
  }

  TEST_CASE("extracted counter is monotone in the list size") {
    Complexity c = extract({}, corpus::definition("counter", "inc"));
    sem::Val f = sem::eval(c.term)->b;
    auto verdict = sem::check_monotone_sampled(f, sem::nat_chain(10), lc::ty::prod(lc::ty::cost(), lc::ty::nat()));
    CHECK(verdict.ok);
    CHECK(verdict.checked == 11);
  }

  TEST_CASE("monotonicity checks catch a decreasing map") {
    sem::Val down = sem::fun([](const sem::Val& n) {
      return sem::cost(n->nat.is_inf() ? ExtInt(0) : ExtInt(-static_cast<std::int64_t>(n->nat.value())));
    });
    auto verdict = sem::check_monotone_sampled(down, sem::nat_chain(5), lc::ty::cost());
    CHECK_FALSE(verdict.ok);
    CHECK_FALSE(verdict.counterexample.empty());
    sem::Val succ = sem::fun([](const sem::Val& n) { return sem::nat(n->nat + 1); });
    CHECK(sem::check_monotone_sampled(succ, sem::nat_chain(20), lc::ty::nat()).ok);
  }
}

TEST_SUITE("sampled inequalities") {
  TEST_CASE("reducts are below redexes at every sample") {
    lc::Context ctx{{"c", lc::ty::cost()}, {"n", lc::ty::nat()}};
    auto redex = rterm("((lam x C (+c x (max x #1))) (+c c #2))");
    auto reduct = *lc::beta_step(redex);
    auto verdict = sem::check_leq_sampled(ctx, reduct, redex, 50);
    CHECK(verdict.ok);
    CHECK(verdict.checked == 50);
  }

  TEST_CASE("a false inequality has a counterexample") {
    auto verdict = sem::check_leq_sampled({}, rterm("#3"), rterm("#2"));
    CHECK_FALSE(verdict.ok);
    CHECK_FALSE(verdict.counterexample.empty());
  }

  TEST_CASE("inc costs at most two at every finite size") {
    Complexity c = extract({}, corpus::definition("counter", "inc"));
    lc::Type bit = test::rtype("(+ 1 1)");
    lc::Context ctx{{"n", lc::ty::list(bit)}};
    auto cost = lc::tm::add(lc::tm::fst(c.term), lc::tm::fst(lc::tm::app(lc::tm::snd(c.term), lc::tm::var("n"))));

    auto open = sem::check_leq_sampled(ctx, cost, rterm("#2"), 50);
    CHECK_FALSE(open.ok);
    CHECK(open.counterexample.find("inf") != std::string::npos);

    lc::Term list = lc::tm::nil(bit);
    for (int n = 0; n <= 100; ++n) {
      auto verdict = sem::check_leq_sampled({}, lc::subst(cost, "n", list), rterm("#2"));
      CHECK(verdict.ok);
      list = lc::tm::cons(lc::tm::inl(lc::ty::unit(), lc::tm::unit()), list);
    }
  }

  TEST_CASE("every generated certificate holds in the model") {
    for (const auto& inst : fuzz::certificate_instances(500, 71)) {
      REQUIRE(lc::leq_check(inst.cert, inst.lhs, inst.rhs, inst.type, inst.ctx));
      auto verdict = sem::check_leq_sampled(inst.ctx, inst.lhs, inst.rhs, 50, 71);
      CAPTURE(inst.kind);
      CAPTURE(verdict.counterexample);
      CHECK(verdict.ok);
      CHECK(verdict.checked >= 50);
    }
  }

  TEST_CASE("interpretation is compositional") {
    auto instances = fuzz::certificate_instances(200, 72);
    lc::Context open = instances.front().ctx;
    lc::Context rest = open;
    rest.erase("c");
    test::Draw d(72);
    const char* closed[] = {"#3", "(max #1 #-4)", "(+c #2 (toC $1))", "#inf", "((lam y C (+c y y)) #5)"};
    for (const auto& inst : instances) {
      for (const char* text : closed) {
        lc::Term arg = rterm(text);
        sem::Env env{{"d", sem::cost(static_cast<std::int64_t>(d.below(7)) - 2)},
                     {"n", sem::nat(d.below(4))},
                     {"k", sem::nat(d.below(4))}};
        sem::Env with_c = env;
        with_c["c"] = sem::eval(arg);
        auto direct = sem::eval(rest, env, lc::subst(inst.lhs, "c", arg));
        auto via_env = sem::eval(open, with_c, inst.lhs);
        CHECK(sem::leq(direct, via_env, lc::ty::cost()));
        CHECK(sem::leq(via_env, direct, lc::ty::cost()));
      }
    }
  }
}
