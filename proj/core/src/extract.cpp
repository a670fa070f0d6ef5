#include "amort/extract.hpp"

#include <functional>
#include <map>
#include <set>

#include "amort/errors.hpp"

namespace amort {

namespace L = lc::tm;

lc::Type potential_type(const la::Type& a) {
  using K = la::TypeKind;
  switch (a->kind) {
    case K::Unit: return lc::ty::unit();
    case K::Nat: return lc::ty::nat();
    case K::Tensor: return lc::ty::prod(potential_type(a->a), potential_type(a->b));
    case K::Plus: return lc::ty::sum(potential_type(a->a), potential_type(a->b));
    case K::Lolli: return lc::ty::arrow(potential_type(a->a), complexity_type(a->b));
    case K::With: return lc::ty::prod(complexity_type(a->a), complexity_type(a->b));
    case K::List: return lc::ty::list(potential_type(a->a));
    case K::Tree: return lc::ty::tree(potential_type(a->a));
    case K::Bang: return potential_type(a->a);
    case K::Exists: return lc::ty::prod(lc::ty::credit(), potential_type(a->a));
  }
  throw TypeMismatch("unknown type form");
}

lc::Type complexity_type(const la::Type& a) { return lc::ty::prod(lc::ty::cost(), potential_type(a)); }

lc::Context extract_context(const la::TypingContext& ctx) {
  lc::Context out;
  for (const auto& alpha : ctx.credit_vars()) out[alpha] = lc::ty::credit();
  for (const auto& [x, a] : ctx.term_vars()) out[x] = potential_type(a);
  return out;
}

namespace {

void collect_names(const la::Term& m, std::set<std::string>& out) {
  if (!m->x.empty()) out.insert(m->x);
  if (!m->y.empty()) out.insert(m->y);
  for (const auto& [alpha, _] : m->credit.coeffs()) out.insert(alpha);
  for (const auto& c : m->sub) collect_names(c, out);
}

bool is_zero_cost(const lc::Term& e) { return e->kind == lc::Kind::CostConst && e->cost == ExtInt(0); }

bool is_atomic(const lc::Term& e) {
  switch (e->kind) {
    case lc::Kind::Var:
    case lc::Kind::Unit:
    case lc::Kind::Zero:
    case lc::Kind::Nil:
    case lc::Kind::Emp:
    case lc::Kind::CostConst:
    case lc::Kind::CreditConst:
      return true;
    default:
      return false;
  }
}

class Extractor {
public:
  explicit Extractor(const la::DerivationPtr& d) { collect_names(d->term, used_); }

  lc::Term run(const la::DerivationPtr& d);

private:
  std::map<std::string, std::size_t> counters_;
  using Body = std::function<lc::Term(lc::Term cost, lc::Term potential)>;

  std::string fresh(const std::string& base) {
    std::size_t& next = counters_[base];
    std::string name = base;
    while (used_.count(name)) name = base + "_" + std::to_string(++next);
    used_.insert(name);
    return name;
  }

  static lc::Term let(const std::string& x, const lc::Type& t, const lc::Term& bound, const lc::Term& body) {
    return L::app(L::lam(x, t, body), bound);
  }

  static lc::Term add(const lc::Term& a, const lc::Term& b) {
    if (is_zero_cost(a)) return b;
    if (is_zero_cost(b)) return a;
    if (a->kind == lc::Kind::CostConst && b->kind == lc::Kind::CostConst) return L::cost(a->cost + b->cost);
    return L::add(a, b);
  }

  static lc::Term scale(ExtNat k, const lc::Term& c) {
    if (k == ExtNat(1) || is_zero_cost(c)) return c;
    return L::scale(k, c);
  }

  // Splits a complexity of source type a into cost and potential parts,
  // sharing anything non-trivial through a let-redex.
  lc::Term bind(const lc::Term& x, const la::Type& a, const Body& body) {
    if (x->kind == lc::Kind::Pair) {
      const lc::Term &c = x->sub[0], &p = x->sub[1];
      if (is_atomic(p)) return body(c, p);
      std::string z = fresh("p");
      return let(z, potential_type(a), p, body(c, L::var(z)));
    }
    std::string z = fresh("z");
    lc::Term zv = L::var(z);
    return let(z, complexity_type(a), x, body(L::fst(zv), L::snd(zv)));
  }

  // c +_c x, where x has complexity type at source type a.
  lc::Term charge(const lc::Term& c, const lc::Term& x, const la::Type& a) {
    if (is_zero_cost(c)) return x;
    if (x->kind == lc::Kind::Pair) return L::pair(add(c, x->sub[0]), x->sub[1]);
    std::string z = fresh("z");
    lc::Term zv = L::var(z);
    return let(z, complexity_type(a), x, L::pair(add(c, L::fst(zv)), L::snd(zv)));
  }

  static lc::Term credit_cost(const CreditTerm& c) {
    if (c.is_closed()) return L::cost(ExtInt::from_nat(c.constant()));
    return L::to_cost(L::credit_term(c));
  }

  lc::Term tree_view_conv(const lc::Term& v) {
    auto w = [](const lc::Term& q) { return L::pair(L::pair(L::cost(0), L::fst(q)), L::snd(q)); };
    lc::Term kids = L::snd(L::snd(v));
    return L::pair(L::fst(v), L::pair(L::fst(L::snd(v)), L::pair(w(L::fst(kids)), w(L::snd(kids)))));
  }

  lc::Term treerec(const la::DerivationPtr& d, const std::vector<lc::Term>& xs);

  std::set<std::string> used_;
};

lc::Term Extractor::run(const la::DerivationPtr& d) {
  using K = la::TermKind;
  const la::Term& m = d->term;
  const auto& ps = d->premises;
  std::vector<lc::Term> xs;
  xs.reserve(ps.size());
  for (const auto& p : ps) xs.push_back(run(p));
  auto ty = [&](std::size_t i) { return ps[i]->type; };

  switch (m->kind) {
    case K::Var:
      return L::pair(L::cost(0), L::var(m->x));
    case K::Lam:
      return L::pair(L::cost(0), L::lam(m->x, potential_type(m->ty), xs[0]));
    case K::App:
      return bind(xs[0], ty(0), [&](lc::Term fc, lc::Term fp) {
        return bind(xs[1], ty(1), [&](lc::Term ac, lc::Term ap) {
          return charge(add(fc, ac), L::app(fp, ap), d->type);
        });
      });
    case K::Pair:
      return bind(xs[0], ty(0), [&](lc::Term ac, lc::Term ap) {
        return bind(xs[1], ty(1), [&](lc::Term bc, lc::Term bp) { return L::pair(add(ac, bc), L::pair(ap, bp)); });
      });
    case K::LetPair:
      return bind(xs[0], ty(0), [&](lc::Term c, lc::Term p) {
        lc::Term body = L::app(L::app(L::lam(m->x, potential_type(ty(0)->a),
                                             L::lam(m->y, potential_type(ty(0)->b), xs[1])),
                                      L::fst(p)),
                               L::snd(p));
        return charge(scale(m->mult, c), body, d->type);
      });
    case K::Inl:
    case K::Inr: {
      lc::Type other = potential_type(m->ty);
      return bind(xs[0], ty(0), [&](lc::Term c, lc::Term p) {
        return L::pair(c, m->kind == K::Inl ? L::inl(other, p) : L::inr(other, p));
      });
    }
    case K::Case:
      return bind(xs[0], ty(0), [&](lc::Term c, lc::Term p) {
        return charge(scale(m->mult, c), L::case_(p, m->x, xs[1], m->y, xs[2]), d->type);
      });
    case K::With:
      return L::pair(L::cost(0), L::pair(xs[0], xs[1]));
    case K::Fst:
    case K::Snd:
      return bind(xs[0], ty(0), [&](lc::Term c, lc::Term p) {
        return charge(c, m->kind == K::Fst ? L::fst(p) : L::snd(p), d->type);
      });
    case K::Unit:
      return L::pair(L::cost(0), L::unit());
    case K::Zero:
      return L::pair(L::cost(0), L::zero());
    case K::Succ:
      return bind(xs[0], ty(0), [&](lc::Term c, lc::Term p) { return L::pair(c, L::succ(p)); });
    case K::Nil:
      return L::pair(L::cost(0), L::nil(potential_type(m->ty)));
    case K::Cons:
      return bind(xs[0], ty(0), [&](lc::Term hc, lc::Term hp) {
        return bind(xs[1], ty(1), [&](lc::Term tc, lc::Term tp) { return L::pair(add(hc, tc), L::cons(hp, tp)); });
      });
    case K::Emp:
      return L::pair(L::cost(0), L::emp(potential_type(m->ty)));
    case K::Node:
      return bind(xs[0], ty(0), [&](lc::Term ec, lc::Term ep) {
        return bind(xs[1], ty(1), [&](lc::Term sc, lc::Term sp) {
          return bind(xs[2], ty(2), [&](lc::Term lc_, lc::Term lp) {
            return bind(xs[3], ty(3), [&](lc::Term rc, lc::Term rp) {
              return L::pair(add(add(ec, sc), add(lc_, rc)), L::node(ep, sp, lp, rp));
            });
          });
        });
      });
    case K::NRec: {
      lc::Type result = complexity_type(d->type);
      return bind(xs[0], ty(0), [&](lc::Term nc, lc::Term np) {
        return bind(xs[1], ty(1), [&](lc::Term bc, lc::Term bp) {
          return bind(xs[2], ty(2), [&](lc::Term sc, lc::Term sp) {
            std::string q = fresh("q"), z = fresh("u");
            lc::Term qv = L::var(q);
            lc::Term step = L::lam(q, lc::ty::prod(lc::ty::nat(), result),
                                   L::app(sp, L::pair(L::fst(qv), L::lam(z, lc::ty::unit(), L::snd(qv)))));
            return charge(add(nc, add(bc, sc)), L::nrec(np, bp, step), d->type);
          });
        });
      });
    }
    case K::LRec: {
      lc::Type result = complexity_type(d->type);
      lc::Type elem = potential_type(ty(0)->a);
      return bind(xs[0], ty(0), [&](lc::Term lc_, lc::Term lp) {
        return bind(xs[1], ty(1), [&](lc::Term bc, lc::Term bp) {
          return bind(xs[2], ty(2), [&](lc::Term sc, lc::Term sp) {
            std::string q = fresh("q");
            lc::Term qv = L::var(q);
            lc::Term rest = L::snd(qv);
            lc::Term arg = L::pair(L::fst(qv), L::pair(L::pair(L::cost(0), L::fst(rest)), L::snd(rest)));
            lc::Term step =
                L::lam(q, lc::ty::prod(elem, lc::ty::prod(lc::ty::list(elem), result)), L::app(sp, arg));
            return charge(add(lc_, add(bc, sc)), L::lrec(lp, bp, step), d->type);
          });
        });
      });
    }
    case K::TreeRec:
      return treerec(d, xs);
    case K::Tick:
      return charge(L::cost(1), xs[0], d->type);
    case K::Create:
      return charge(credit_cost(m->credit), xs[0], d->type);
    case K::Spend: {
      if (m->credit.constant().is_inf()) throw InfiniteCreditOverflow("spend of an infinite credit amount");
      lc::Term c = m->credit.is_closed() ? L::cost(-ExtInt::from_nat(m->credit.constant()).value())
                                          : L::neg(credit_cost(m->credit));
      return charge(c, xs[0], d->type);
    }
    case K::Save:
      return bind(xs[0], ty(0), [&](lc::Term c, lc::Term p) { return L::pair(scale(m->mult, c), p); });
    case K::Transfer:
      return bind(xs[0], ty(0), [&](lc::Term c, lc::Term p) {
        return charge(scale(m->mult, c), L::app(L::lam(m->x, potential_type(ty(0)->a), xs[1]), p), d->type);
      });
    case K::Pack:
      return bind(xs[0], ty(0), [&](lc::Term c, lc::Term p) {
        return L::pair(c, L::pair(L::credit_term(m->credit), p));
      });
    case K::Unpack:
      return bind(xs[0], ty(0), [&](lc::Term c, lc::Term p) {
        lc::Term fn = L::lam(m->x, lc::ty::credit(), L::lam(m->y, potential_type(ty(0)->a), xs[1]));
        return charge(c, L::app(L::app(fn, L::fst(p)), L::snd(p)), d->type);
      });
    case K::Let:
      return bind(xs[0], ty(0), [&](lc::Term c, lc::Term p) {
        return charge(c, L::app(L::lam(m->x, potential_type(ty(0)), xs[1]), p), d->type);
      });
  }
  throw TypeMismatch("unknown term form");
}

// Each branch is adapted to the recurrence-language view, where the
// subtrees inside a view carry no cost of their own.
lc::Term Extractor::treerec(const la::DerivationPtr& d, const std::vector<lc::Term>& xs) {
  const auto& ps = d->premises;
  lc::Type elem = potential_type(ps[0]->type->a);
  lc::Type result = complexity_type(d->type);
  lc::Type lc_view = lc::tree_view(elem, result);
  lc::Type la_view = potential_type(la::ty::tensor(
      ps[0]->type->a,
      la::ty::tensor(la::ty::nat(), la::ty::tensor(la::ty::with(ps[0]->type, d->type),
                                                   la::ty::with(ps[0]->type, d->type)))));
  auto head = [&](const lc::Term& q, const lc::Term& rest) {
    return L::pair(L::fst(q), L::pair(L::fst(L::snd(q)), rest));
  };
  auto arg_type = [&](const lc::Type& rest) { return lc::ty::prod(elem, lc::ty::prod(lc::ty::nat(), rest)); };

  std::vector<lc::Term> costs(5), pots(5);
  std::function<lc::Term(std::size_t)> go = [&](std::size_t i) -> lc::Term {
    if (i < 5)
      return bind(xs[i], ps[i]->type, [&, i](lc::Term c, lc::Term p) {
        costs[i] = c;
        pots[i] = p;
        return go(i + 1);
      });
    std::string q1 = fresh("q"), q2 = fresh("q"), q3 = fresh("q"), u = fresh("u"), v = fresh("v");
    lc::Term a1 = L::var(q1), a2 = L::var(q2), a3 = L::var(q3);
    lc::Term sum = L::case_(L::snd(L::snd(a1)), u, L::inl(la_view, L::var(u)), v,
                            L::inr(lc::ty::unit(), tree_view_conv(L::var(v))));
    lc::Term le = L::lam(q1, arg_type(lc::ty::sum(lc::ty::unit(), lc_view)), L::app(pots[2], head(a1, sum)));
    lc::Term re = L::lam(q2, arg_type(lc_view), L::app(pots[3], head(a2, tree_view_conv(L::snd(L::snd(a2))))));
    lc::Term kids = L::snd(L::snd(a3));
    lc::Term both = L::lam(q3, arg_type(lc::ty::prod(lc_view, lc_view)),
                           L::app(pots[4], head(a3, L::pair(tree_view_conv(L::fst(kids)),
                                                            tree_view_conv(L::snd(kids))))));
    lc::Term total = add(add(costs[0], costs[1]), add(add(costs[2], costs[3]), costs[4]));
    return charge(total, L::treerec(pots[0], pots[1], le, re, both), d->type);
  };
  return go(0);
}

}  // namespace

Complexity extract(const la::DerivationPtr& d) {
  Extractor ex(d);
  return {ex.run(d), complexity_type(d->type)};
}

Complexity extract(const la::TypingContext& ctx, const la::Term& m) {
  return extract(la::synthesize(ctx, m).derivation);
}

}  // namespace amort
