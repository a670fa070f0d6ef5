#include "amort/reclang.hpp"

#include "amort/errors.hpp"
#include "amort/la_interp.hpp"

namespace amort::lc {

Type tree_view(const Type& elem, const Type& result) {
  Type child = ty::prod(ty::tree(elem), result);
  return ty::prod(elem, ty::prod(ty::nat(), ty::prod(child, child)));
}

namespace {

std::string brief(const Term& e) {
  std::string s = show(e);
  if (s.size() > 120) s = s.substr(0, 117) + "...";
  return s;
}

class Typer {
public:
  explicit Typer(TypeAnnotations* out) : out_(out) {}

  Type run(const Context& ctx, const Term& e) {
    Type t = infer(ctx, e);
    if (out_) (*out_)[e.get()] = t;
    return t;
  }

private:
  [[noreturn]] void fail(const Term& e, const std::string& what) {
    throw TypeMismatch(std::string(kind_name(e->kind)) + ": " + what + " in " + brief(e));
  }

  void expect(const Term& e, const Type& want, const Type& got) {
    if (!type_equal(want, got)) fail(e, "expected " + show(want) + ", found " + show(got));
  }

  Type expect_kind(const Term& e, const Type& t, TypeKind k, const char* what) {
    if (t->kind != k) fail(e, std::string("expected ") + what + ", found " + show(t));
    return t;
  }

  Type infer(const Context& ctx, const Term& e);

  TypeAnnotations* out_;
};

Type Typer::infer(const Context& ctx, const Term& e) {
  switch (e->kind) {
    case Kind::Var: {
      auto it = ctx.find(e->x);
      if (it == ctx.end()) throw UnboundVariable("unbound variable '" + e->x + "'");
      return it->second;
    }
    case Kind::Lam: {
      if (!e->ty) fail(e, "missing binder type");
      Context inner = ctx;
      inner[e->x] = e->ty;
      return ty::arrow(e->ty, run(inner, e->sub[0]));
    }
    case Kind::App: {
      Type f = expect_kind(e, run(ctx, e->sub[0]), TypeKind::Arrow, "a function");
      expect(e, f->a, run(ctx, e->sub[1]));
      return f->b;
    }
    case Kind::Pair:
      return ty::prod(run(ctx, e->sub[0]), run(ctx, e->sub[1]));
    case Kind::Fst:
      return expect_kind(e, run(ctx, e->sub[0]), TypeKind::Prod, "a product")->a;
    case Kind::Snd:
      return expect_kind(e, run(ctx, e->sub[0]), TypeKind::Prod, "a product")->b;
    case Kind::Inl:
      return ty::sum(run(ctx, e->sub[0]), e->ty);
    case Kind::Inr:
      return ty::sum(e->ty, run(ctx, e->sub[0]));
    case Kind::Case: {
      Type s = expect_kind(e, run(ctx, e->sub[0]), TypeKind::Sum, "a sum");
      Context l = ctx, r = ctx;
      l[e->x] = s->a;
      r[e->y] = s->b;
      Type tl = run(l, e->sub[1]);
      expect(e, tl, run(r, e->sub[2]));
      return tl;
    }
    case Kind::Unit:
      return ty::unit();
    case Kind::Zero:
      return ty::nat();
    case Kind::Succ:
      expect(e, ty::nat(), run(ctx, e->sub[0]));
      return ty::nat();
    case Kind::NRec: {
      expect(e, ty::nat(), run(ctx, e->sub[0]));
      Type base = expect_kind(e, run(ctx, e->sub[1]), TypeKind::Arrow, "a base thunk");
      expect(e, ty::unit(), base->a);
      Type c = base->b;
      expect(e, ty::arrow(ty::prod(ty::nat(), c), c), run(ctx, e->sub[2]));
      return c;
    }
    case Kind::Nil:
      return ty::list(e->ty);
    case Kind::Cons: {
      Type h = run(ctx, e->sub[0]);
      expect(e, ty::list(h), run(ctx, e->sub[1]));
      return ty::list(h);
    }
    case Kind::LRec: {
      Type l = expect_kind(e, run(ctx, e->sub[0]), TypeKind::List, "a list");
      Type base = expect_kind(e, run(ctx, e->sub[1]), TypeKind::Arrow, "a base thunk");
      expect(e, ty::unit(), base->a);
      Type c = base->b;
      expect(e, ty::arrow(ty::prod(l->a, ty::prod(l, c)), c), run(ctx, e->sub[2]));
      return c;
    }
    case Kind::Emp:
      return ty::tree(e->ty);
    case Kind::Node: {
      Type x = run(ctx, e->sub[0]);
      expect(e, ty::nat(), run(ctx, e->sub[1]));
      expect(e, ty::tree(x), run(ctx, e->sub[2]));
      expect(e, ty::tree(x), run(ctx, e->sub[3]));
      return ty::tree(x);
    }
    case Kind::TreeRec: {
      Type t = expect_kind(e, run(ctx, e->sub[0]), TypeKind::Tree, "a tree");
      Type base = expect_kind(e, run(ctx, e->sub[1]), TypeKind::Arrow, "a base thunk");
      expect(e, ty::unit(), base->a);
      Type c = base->b, a = t->a, v = tree_view(a, c);
      expect(e, ty::arrow(ty::prod(a, ty::prod(ty::nat(), ty::sum(ty::unit(), v))), c), run(ctx, e->sub[2]));
      expect(e, ty::arrow(ty::prod(a, ty::prod(ty::nat(), v)), c), run(ctx, e->sub[3]));
      expect(e, ty::arrow(ty::prod(a, ty::prod(ty::nat(), ty::prod(v, v))), c), run(ctx, e->sub[4]));
      return c;
    }
    case Kind::CostConst:
      return ty::cost();
    case Kind::CostAdd:
    case Kind::CostMax:
      expect(e, ty::cost(), run(ctx, e->sub[0]));
      expect(e, ty::cost(), run(ctx, e->sub[1]));
      return ty::cost();
    case Kind::CostScale:
    case Kind::CostNeg:
      expect(e, ty::cost(), run(ctx, e->sub[0]));
      return ty::cost();
    case Kind::CreditConst:
      return ty::credit();
    case Kind::CreditAdd:
      expect(e, ty::credit(), run(ctx, e->sub[0]));
      expect(e, ty::credit(), run(ctx, e->sub[1]));
      return ty::credit();
    case Kind::CreditScale:
      expect(e, ty::credit(), run(ctx, e->sub[0]));
      return ty::credit();
    case Kind::ToCost:
      expect(e, ty::credit(), run(ctx, e->sub[0]));
      return ty::cost();
  }
  fail(e, "unknown form");
}

// ---- call-by-need normalization ----

struct Value;
struct Thunk;
struct EnvNode;
using ValuePtr = std::shared_ptr<Value>;
using ThunkPtr = std::shared_ptr<Thunk>;
using EnvPtr = std::shared_ptr<const EnvNode>;

struct EnvNode {
  std::string name;
  ThunkPtr thunk;
  EnvPtr next;
};

struct Thunk {
  Term term;
  EnvPtr env;
  ValuePtr value;
};

// Weak head normal forms. Closures keep their environment; constructors
// keep their (lazy) components.
struct Value {
  Kind kind;
  Term term;  // Lam node for closures, original node otherwise
  EnvPtr env;
  std::vector<ThunkPtr> parts;
  ExtInt cost;
  ExtNat amount;
};

EnvPtr extend(EnvPtr env, const std::string& x, ThunkPtr t) {
  return std::make_shared<EnvNode>(EnvNode{x, std::move(t), std::move(env)});
}

ThunkPtr lookup(const EnvPtr& env, const std::string& x) {
  for (const EnvNode* cur = env.get(); cur; cur = cur->next.get())
    if (cur->name == x) return cur->thunk;
  return nullptr;
}

ThunkPtr ready(ValuePtr v) {
  auto t = std::make_shared<Thunk>();
  t->value = std::move(v);
  return t;
}

class Normalizer {
public:
  explicit Normalizer(std::uint64_t fuel) : fuel_(fuel) {}

  ValuePtr force(const ThunkPtr& t) {
    if (!t->value) {
      t->value = eval(t->term, t->env);
      t->term = nullptr;
      t->env = nullptr;
    }
    return t->value;
  }

  ValuePtr eval(const Term& e, const EnvPtr& env);
  Term readback(const ValuePtr& v);

private:
  ThunkPtr delay(const Term& e, const EnvPtr& env) {
    if (e->kind == Kind::Var) {
      if (auto t = lookup(env, e->x)) return t;
    }
    auto t = std::make_shared<Thunk>();
    t->term = e;
    t->env = env;
    return t;
  }

  ValuePtr make(Kind k, const Term& origin, std::vector<ThunkPtr> parts = {}) {
    auto v = std::make_shared<Value>();
    v->kind = k;
    v->term = origin;
    v->parts = std::move(parts);
    return v;
  }

  ValuePtr cost_value(ExtInt c) {
    auto v = make(Kind::CostConst, nullptr);
    v->cost = c;
    return v;
  }

  ValuePtr credit_value(ExtNat c) {
    auto v = make(Kind::CreditConst, nullptr);
    v->amount = c;
    return v;
  }

  ValuePtr apply(const ValuePtr& f, const ThunkPtr& arg) {
    if (f->kind != Kind::Lam) throw StuckTerm("application of a non-function");
    return eval(f->term->sub[0], extend(f->env, f->term->x, arg));
  }

  ValuePtr pair(ThunkPtr a, ThunkPtr b) { return make(Kind::Pair, nullptr, {std::move(a), std::move(b)}); }

  ExtInt cost_of(const Term& e, const EnvPtr& env) {
    ValuePtr v = eval(e, env);
    if (v->kind != Kind::CostConst) throw StuckTerm("expected a cost value at " + brief(e));
    return v->cost;
  }

  ExtNat credit_of(const Term& e, const EnvPtr& env) {
    ValuePtr v = eval(e, env);
    if (v->kind != Kind::CreditConst) throw StuckTerm("expected a credit value at " + brief(e));
    return v->amount;
  }

  // A thunk evaluating `rec` (a recursor node over variables #0..#4) in an
  // environment binding those variables.
  ThunkPtr recursive(Kind k, std::vector<ThunkPtr> args) {
    std::vector<Term> vars;
    EnvPtr env;
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string name = "#" + std::to_string(i);
      vars.push_back(tm::var(name));
      env = extend(env, name, args[i]);
    }
    Term rec;
    if (k == Kind::NRec) rec = tm::nrec(vars[0], vars[1], vars[2]);
    else if (k == Kind::LRec) rec = tm::lrec(vars[0], vars[1], vars[2]);
    else rec = tm::treerec(vars[0], vars[1], vars[2], vars[3], vars[4]);
    auto t = std::make_shared<Thunk>();
    t->term = rec;
    t->env = env;
    return t;
  }

  ThunkPtr view(const ValuePtr& tree, const std::vector<ThunkPtr>& branches) {
    auto child = [&](const ThunkPtr& sub) {
      std::vector<ThunkPtr> args{sub};
      args.insert(args.end(), branches.begin(), branches.end());
      return ready(pair(sub, recursive(Kind::TreeRec, args)));
    };
    return ready(pair(tree->parts[0],
                      ready(pair(tree->parts[1], ready(pair(child(tree->parts[2]), child(tree->parts[3])))))));
  }

  std::uint64_t fuel_;
};

ValuePtr Normalizer::eval(const Term& e, const EnvPtr& env) {
  if (fuel_ == 0) throw FuelExhausted("normalization step budget exhausted");
  --fuel_;
  switch (e->kind) {
    case Kind::Var: {
      ThunkPtr t = lookup(env, e->x);
      if (!t) throw StuckTerm("free variable '" + e->x + "' during normalization");
      return force(t);
    }
    case Kind::Lam: {
      auto v = make(Kind::Lam, e);
      v->env = env;
      return v;
    }
    case Kind::App:
      return apply(eval(e->sub[0], env), delay(e->sub[1], env));
    case Kind::Pair:
    case Kind::Inl:
    case Kind::Inr:
    case Kind::Succ:
    case Kind::Cons:
    case Kind::Node: {
      std::vector<ThunkPtr> parts;
      for (const auto& c : e->sub) parts.push_back(delay(c, env));
      return make(e->kind, e, std::move(parts));
    }
    case Kind::Unit:
    case Kind::Zero:
    case Kind::Nil:
    case Kind::Emp:
      return make(e->kind, e);
    case Kind::Fst:
    case Kind::Snd: {
      ValuePtr p = eval(e->sub[0], env);
      if (p->kind != Kind::Pair) throw StuckTerm("projection of a non-pair");
      return force(p->parts[e->kind == Kind::Fst ? 0 : 1]);
    }
    case Kind::Case: {
      ValuePtr s = eval(e->sub[0], env);
      if (s->kind == Kind::Inl) return eval(e->sub[1], extend(env, e->x, s->parts[0]));
      if (s->kind == Kind::Inr) return eval(e->sub[2], extend(env, e->y, s->parts[0]));
      throw StuckTerm("case of a non-injection");
    }
    case Kind::NRec: {
      ValuePtr n = eval(e->sub[0], env);
      ThunkPtr base = delay(e->sub[1], env), step = delay(e->sub[2], env);
      if (n->kind == Kind::Zero) return apply(force(base), ready(make(Kind::Unit, nullptr)));
      if (n->kind != Kind::Succ) throw StuckTerm("nrec on a non-numeral");
      ThunkPtr rec = recursive(Kind::NRec, {n->parts[0], base, step});
      return apply(force(step), ready(pair(n->parts[0], rec)));
    }
    case Kind::LRec: {
      ValuePtr l = eval(e->sub[0], env);
      ThunkPtr base = delay(e->sub[1], env), step = delay(e->sub[2], env);
      if (l->kind == Kind::Nil) return apply(force(base), ready(make(Kind::Unit, nullptr)));
      if (l->kind != Kind::Cons) throw StuckTerm("lrec on a non-list");
      ThunkPtr rec = recursive(Kind::LRec, {l->parts[1], base, step});
      return apply(force(step), ready(pair(l->parts[0], ready(pair(l->parts[1], rec)))));
    }
    case Kind::TreeRec: {
      ValuePtr t = eval(e->sub[0], env);
      std::vector<ThunkPtr> branches;
      for (std::size_t i = 1; i < 5; ++i) branches.push_back(delay(e->sub[i], env));
      if (t->kind == Kind::Emp) return apply(force(branches[0]), ready(make(Kind::Unit, nullptr)));
      if (t->kind != Kind::Node) throw StuckTerm("treerec on a non-tree");
      ValuePtr l = force(t->parts[2]);
      ValuePtr r = force(t->parts[3]);
      if (l->kind == Kind::Emp) {
        ThunkPtr right = r->kind == Kind::Emp
                             ? ready(make(Kind::Inl, nullptr, {ready(make(Kind::Unit, nullptr))}))
                             : ready(make(Kind::Inr, nullptr, {view(r, branches)}));
        return apply(force(branches[1]), ready(pair(t->parts[0], ready(pair(t->parts[1], right)))));
      }
      if (r->kind == Kind::Emp)
        return apply(force(branches[2]), ready(pair(t->parts[0], ready(pair(t->parts[1], view(l, branches))))));
      return apply(force(branches[3]),
                   ready(pair(t->parts[0],
                              ready(pair(t->parts[1], ready(pair(view(l, branches), view(r, branches))))))));
    }
    case Kind::CostConst:
      return cost_value(e->cost);
    case Kind::CostAdd: {
      ExtInt a = cost_of(e->sub[0], env);
      if (a.is_inf()) return cost_value(a);
      return cost_value(a + cost_of(e->sub[1], env));
    }
    case Kind::CostMax: {
      ExtInt a = cost_of(e->sub[0], env);
      if (a.is_inf()) return cost_value(a);
      return cost_value(max(a, cost_of(e->sub[1], env)));
    }
    case Kind::CostScale:
      if (e->mult.is_zero()) return cost_value(0);
      return cost_value(scale(e->mult, cost_of(e->sub[0], env)));
    case Kind::CostNeg:
      return cost_value(-cost_of(e->sub[0], env));
    case Kind::CreditConst:
      return credit_value(e->amount);
    case Kind::CreditAdd:
      return credit_value(credit_of(e->sub[0], env) + credit_of(e->sub[1], env));
    case Kind::CreditScale:
      if (e->mult.is_zero()) return credit_value(0);
      return credit_value(e->mult * credit_of(e->sub[0], env));
    case Kind::ToCost:
      return cost_value(ExtInt::from_nat(credit_of(e->sub[0], env)));
  }
  throw StuckTerm("unknown form during normalization");
}

Term Normalizer::readback(const ValuePtr& v) {
  switch (v->kind) {
    case Kind::CostConst:
      return tm::cost(v->cost);
    case Kind::CreditConst:
      return tm::credit(v->amount);
    case Kind::Unit:
      return tm::unit();
    case Kind::Zero:
      return tm::zero();
    case Kind::Nil:
      return v->term ? v->term : tm::nil(ty::unit());
    case Kind::Emp:
      return v->term ? v->term : tm::emp(ty::unit());
    case Kind::Lam: {
      Term out = v->term;
      for (const auto& x : free_vars(v->term)) {
        ThunkPtr t = lookup(v->env, x);
        if (!t) throw StuckTerm("free variable '" + x + "' in closure");
        out = subst(out, x, readback(force(t)));
      }
      return out;
    }
    case Kind::Succ: {
      std::uint64_t n = 0;
      ValuePtr cur = v;
      while (cur->kind == Kind::Succ) {
        ++n;
        cur = force(cur->parts[0]);
      }
      Term base = readback(cur);
      for (std::uint64_t i = 0; i < n; ++i) base = tm::succ(base);
      return base;
    }
    case Kind::Inl:
    case Kind::Inr: {
      Type other = v->term ? v->term->ty : ty::unit();
      Term inner = readback(force(v->parts[0]));
      return v->kind == Kind::Inl ? tm::inl(other, inner) : tm::inr(other, inner);
    }
    case Kind::Pair:
      return tm::pair(readback(force(v->parts[0])), readback(force(v->parts[1])));
    case Kind::Cons:
      return tm::cons(readback(force(v->parts[0])), readback(force(v->parts[1])));
    case Kind::Node:
      return tm::node(readback(force(v->parts[0])), readback(force(v->parts[1])),
                      readback(force(v->parts[2])), readback(force(v->parts[3])));
    default:
      break;
  }
  throw StuckTerm("cannot read back value");
}

}  // namespace

Type typecheck(const Context& ctx, const Term& e, TypeAnnotations* annotations) {
  Typer typer(annotations);
  return typer.run(ctx, e);
}

Term normalize(const Term& e, std::uint64_t fuel) {
  Normalizer n(fuel == 0 ? la::default_fuel() : fuel);
  return n.readback(n.eval(e, nullptr));
}

ExtInt normalize_cost(const Term& e, std::uint64_t fuel) {
  Term v = normalize(e, fuel);
  if (v->kind != Kind::CostConst) throw TypeMismatch("expected a cost, normalized to " + brief(v));
  return v->cost;
}

}  // namespace amort::lc
