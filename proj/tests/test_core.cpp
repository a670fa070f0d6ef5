#include "doctest.h"

#include "amort/credit.hpp"
#include "amort/errors.hpp"
#include "amort/ext.hpp"
#include "amort/la_ast.hpp"
#include "support.hpp"

using namespace amort;
using test::Draw;

namespace {

ResourceTerm uses(std::initializer_list<std::pair<const char*, ExtNat>> xs, CreditTerm b = {}) {
  ResourceTerm f = ResourceTerm::credits(b);
  for (const auto& [x, k] : xs) f = f + ResourceTerm::use(x, k);
  return f;
}

const ExtNat inf = ExtNat::inf();

}  // namespace

TEST_SUITE("extended arithmetic") {
  TEST_CASE("multiplication by infinity") {
    CHECK(ext_mul(inf, 0) == ExtNat(0));
    CHECK(ext_mul(0, inf) == ExtNat(0));
    CHECK(ext_mul(inf, 5) == inf);
    for (std::uint64_t k = 0; k < 20; ++k) CHECK(ext_mul(1, k) == ExtNat(k));
  }

  TEST_CASE("addition and order") {
    CHECK(inf + 3 == inf);
    CHECK(ExtNat(2) + ExtNat(3) == ExtNat(5));
    CHECK(ExtNat(0) < ExtNat(1));
    CHECK(ExtNat(1000000) < inf);
    CHECK(monus(ExtNat(3), ExtNat(5)) == ExtNat(0));
    CHECK(monus(inf, ExtNat(5)) == inf);
    CHECK_THROWS_AS((void)inf.value(), ArithmeticError);
  }

  TEST_CASE("integers with top") {
    ExtInt top = ExtInt::inf();
    CHECK(ExtInt(-3) < ExtInt(0));
    CHECK(ExtInt(7) < top);
    CHECK(max(top, ExtInt(4)) == top);
    CHECK(max(ExtInt(-1), ExtInt(-4)) == ExtInt(-1));
    CHECK(top + ExtInt(-10) == top);
    CHECK(-top == top);
    CHECK(scale(inf, ExtInt(0)) == ExtInt(0));
    CHECK(scale(inf, ExtInt(-2)) == ExtInt(0));
    CHECK(scale(inf, ExtInt(2)) == top);
    CHECK(scale(3, ExtInt(-2)) == ExtInt(-6));
    CHECK_THROWS_AS(checked_add(INT64_MAX, 1), ArithmeticError);
  }

  TEST_CASE("laws hold on random draws") {
    Draw d(11);
    for (int i = 0; i < 2000; ++i) {
      ExtNat a = d.ext_nat(), b = d.ext_nat(), c = d.ext_nat();
      CHECK(ext_mul(a, b) == ext_mul(b, a));
      CHECK(ext_mul(a, ext_mul(b, c)) == ext_mul(ext_mul(a, b), c));
      CHECK(a + b == b + a);
      CHECK((a + b) + c == a + (b + c));
      CHECK(ext_mul(a, b + c) == ext_mul(a, b) + ext_mul(a, c));
      if (a <= b) CHECK(a + c <= b + c);
    }
  }
}

TEST_SUITE("credit terms") {
  TEST_CASE("normal form drops zero coefficients") {
    CreditTerm c = CreditTerm::var("a", 0) + CreditTerm(2);
    CHECK(c.is_closed());
    CHECK(c == CreditTerm(2));
    CHECK((CreditTerm::var("a") + CreditTerm::var("a")).coeff("a") == ExtNat(2));
  }

  TEST_CASE("substitution") {
    CreditTerm c = CreditTerm::var("a") + CreditTerm::var("b") + CreditTerm(1);
    CHECK(c.subst("a", CreditTerm(2)) == CreditTerm::var("b") + CreditTerm(3));
    CHECK(CreditTerm::var("a").subst("a", CreditTerm(3)) == CreditTerm(3));
    CHECK(c.subst("z", CreditTerm(9)) == c);
  }

  TEST_CASE("print and parse round trip") {
    Draw d(3);
    for (int i = 0; i < 500; ++i) {
      CreditTerm c = d.credit();
      CreditTerm back;
      REQUIRE(CreditTerm::parse(c.to_string(), back));
      CHECK(back == c);
    }
  }

  TEST_CASE("substitution inside types is capture avoiding") {
    auto t = la::ty::bang(1, CreditTerm::var("a"), la::ty::unit());
    CHECK(la::type_equal(la::subst_credit(t, "a", CreditTerm(3)), la::ty::bang(1, CreditTerm(3), la::ty::unit())));

    auto ex = la::ty::exists("b", la::ty::bang(1, CreditTerm::var("a") + CreditTerm::var("b"), la::ty::unit()));
    auto want = la::ty::exists("b", la::ty::bang(1, CreditTerm::var("b") + CreditTerm(1), la::ty::unit()));
    CHECK(la::type_equal(la::subst_credit(ex, "a", CreditTerm(1)), want));

    // Substituting a term that mentions the bound name must rename the binder.
    auto captured = la::subst_credit(ex, "a", CreditTerm::var("b"));
    REQUIRE(captured->kind == la::TypeKind::Exists);
    CHECK(captured->binder != "b");
    CHECK(captured->a->credit.coeff("b") == ExtNat(1));
  }
}

TEST_SUITE("resource terms") {
  TEST_CASE("substitution examples") {
    ResourceTerm g = uses({{"x", 3}, {"y", 2}}, CreditTerm(2));
    ResourceTerm f = uses({{"a", 10}, {"b", 11}}, CreditTerm(3));
    CHECK(resource_subst(g, "x", f) == uses({{"a", 30}, {"b", 33}, {"y", 2}}, CreditTerm(11)));

    ResourceTerm zero = uses({{"x", 0}}, CreditTerm(5));
    CHECK(resource_subst(zero, "x", f) == test::bank(5));

    ResourceTerm big = uses({{"x", inf}}, CreditTerm(1));
    CHECK(resource_subst(big, "x", uses({{"y", 2}}, CreditTerm(1))) == uses({{"y", inf}}, CreditTerm(inf)));
  }

  TEST_CASE("order examples") {
    CHECK(resource_leq(uses({{"x", 2}}, CreditTerm(1)), uses({{"x", 3}}, CreditTerm(2))));
    CHECK(resource_leq(uses({{"x", 1}}, CreditTerm::var("a")), uses({{"x", 1}}, CreditTerm::var("a") + CreditTerm(1))));
    CHECK_FALSE(resource_leq(uses({{"x", 2}}), uses({{"x", 1}}, CreditTerm(inf))));
  }

  TEST_CASE("normalization is idempotent") {
    Draw d(5);
    for (int i = 0; i < 500; ++i) {
      ResourceTerm f = d.resource();
      CHECK(f + ResourceTerm{} == f);
      CHECK(ExtNat(1) * f == f);
      for (const auto& [x, k] : f.uses()) CHECK_FALSE(k.is_zero());
    }
  }

  TEST_CASE("substitution distributes over addition") {
    Draw d(7);
    for (int i = 0; i < 1000; ++i) {
      ResourceTerm f = d.resource(), g = d.resource(), h = d.resource({"u", "v"});
      CHECK(resource_subst(f + g, "x", h) == resource_subst(f, "x", h) + resource_subst(g, "x", h));
    }
  }

  TEST_CASE("order is a partial order") {
    Draw d(9);
    for (int i = 0; i < 1000; ++i) {
      ResourceTerm f = d.resource(), g = d.resource(), h = d.resource();
      CHECK(resource_leq(f, f));
      if (resource_leq(f, g) && resource_leq(g, f)) CHECK(f == g);
      if (resource_leq(f, g) && resource_leq(g, h)) CHECK(resource_leq(f, h));
      CHECK(resource_leq(f, f + g));
      CHECK(resource_leq(f, join(f, g)));
      CHECK(resource_leq(g, join(f, g)));
    }
  }
}
