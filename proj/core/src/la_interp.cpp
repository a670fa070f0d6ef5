#include "amort/la_interp.hpp"

#include <cstdlib>
#include <map>

#include "amort/errors.hpp"

namespace amort::la {

std::int64_t CostPair::amortized() const {
  return checked_add(static_cast<std::int64_t>(n), r);
}

std::uint64_t default_fuel() {
  if (const char* env = std::getenv("AMORT_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return 50'000'000;
}

namespace {

std::int64_t closed_credit(const CreditTerm& c, const Term& at) {
  if (!c.is_closed()) throw StuckTerm("open credit term " + c.to_string() + " at run time in " + show(at));
  if (c.constant().is_inf()) throw InfiniteCreditOverflow("infinite credit amount in " + show(at));
  std::uint64_t v = c.constant().value();
  if (v > static_cast<std::uint64_t>(INT64_MAX)) throw ArithmeticError("credit amount overflows");
  return static_cast<std::int64_t>(v);
}

std::int64_t repeat(ExtNat k, std::int64_t r, const char* rule) {
  if (r == 0) return 0;
  if (k.is_inf())
    throw InfiniteCreditOverflow(std::string(rule) + ": credit effect " + std::to_string(r) +
                                 " repeated infinitely often");
  std::uint64_t kv = k.value();
  if (kv > static_cast<std::uint64_t>(INT64_MAX)) throw ArithmeticError("multiplicity overflows");
  return checked_mul(static_cast<std::int64_t>(kv), r);
}

class Evaluator {
public:
  Evaluator(std::uint64_t fuel, std::vector<TraceRecord>* trace) : fuel_(fuel), trace_(trace) {}

  Term run(const Term& m, CostPair& cost);

private:
  void note(const char* rule, std::uint64_t dn, std::int64_t dr) {
    if (trace_ && (dn != 0 || dr != 0)) trace_->push_back({rule, dn, dr});
  }

  [[noreturn]] void stuck(const Term& m, const char* why) {
    std::string s = show(m);
    if (s.size() > 120) s = s.substr(0, 117) + "...";
    throw StuckTerm(std::string(why) + ": " + s);
  }

  void add(CostPair& into, const CostPair& c) {
    into.n += c.n;
    into.r = checked_add(into.r, c.r);
  }

  // Unwraps a step-function value save^k_c (lam ...).
  const Term& step_fn(const Term& v, const Term& at) {
    if (v->kind != TermKind::Save || v->sub[0]->kind != TermKind::Lam) stuck(at, "recursor step is not a saved function");
    return v->sub[0];
  }

  Term apply(const Term& fn, const Term& arg, CostPair& cost) {
    return run(subst(fn->sub[0], fn->x, arg), cost);
  }

  Term tree_view(const Term& t, const std::vector<Term>& branches) {
    auto rec = [&](const Term& sub) {
      return tm::with(sub, tm::treerec(sub, branches[0], branches[1], branches[2], branches[3]));
    };
    return tm::pair(t->sub[0], tm::pair(t->sub[1], tm::pair(rec(t->sub[2]), rec(t->sub[3]))));
  }

  std::uint64_t fuel_;
  std::vector<TraceRecord>* trace_;
};

Term Evaluator::run(const Term& m, CostPair& cost) {
  if (fuel_ == 0) throw FuelExhausted("evaluation step budget exhausted");
  --fuel_;
  switch (m->kind) {
    case TermKind::Var:
      stuck(m, "free variable");
    case TermKind::Lam:
    case TermKind::Unit:
    case TermKind::Zero:
    case TermKind::Nil:
    case TermKind::Emp:
    case TermKind::With:
      return m;
    case TermKind::Pair:
    case TermKind::Inl:
    case TermKind::Inr:
    case TermKind::Succ:
    case TermKind::Cons:
    case TermKind::Node:
    case TermKind::Pack: {
      if (is_value(m)) return m;
      auto copy = std::make_shared<TermNode>(*m);
      for (auto& c : copy->sub) c = run(c, cost);
      return copy;
    }
    case TermKind::App: {
      Term f = run(m->sub[0], cost);
      Term a = run(m->sub[1], cost);
      if (f->kind != TermKind::Lam) stuck(m, "application of a non-function");
      return apply(f, a, cost);
    }
    case TermKind::Let: {
      Term v = run(m->sub[0], cost);
      return run(subst(m->sub[1], m->x, v), cost);
    }
    case TermKind::LetPair: {
      CostPair first;
      Term p = run(m->sub[0], first);
      if (p->kind != TermKind::Pair) stuck(m, "pair elimination of a non-pair");
      std::int64_t r1 = repeat(m->mult, first.r, "let-pair");
      note("let-pair", 0, r1 - first.r);
      add(cost, {first.n, r1});
      Term body = subst(m->sub[1], m->x, p->sub[0]);
      body = subst(body, m->y, p->sub[1]);
      return run(body, cost);
    }
    case TermKind::Case: {
      CostPair first;
      Term s = run(m->sub[0], first);
      std::int64_t r1 = repeat(m->mult, first.r, "case");
      note("case", 0, r1 - first.r);
      add(cost, {first.n, r1});
      if (s->kind == TermKind::Inl) return run(subst(m->sub[1], m->x, s->sub[0]), cost);
      if (s->kind == TermKind::Inr) return run(subst(m->sub[2], m->y, s->sub[0]), cost);
      stuck(m, "case of a non-injection");
    }
    case TermKind::Fst:
    case TermKind::Snd: {
      Term w = run(m->sub[0], cost);
      if (w->kind != TermKind::With) stuck(m, "projection of a non-additive pair");
      return run(w->sub[m->kind == TermKind::Fst ? 0 : 1], cost);
    }
    case TermKind::NRec: {
      Term n = run(m->sub[0], cost);
      Term base = run(m->sub[1], cost);
      Term step = run(m->sub[2], cost);
      if (base->kind != TermKind::Lam) stuck(m, "nrec base is not a function");
      if (n->kind == TermKind::Zero) return apply(base, tm::unit(), cost);
      if (n->kind != TermKind::Succ) stuck(m, "nrec on a non-numeral");
      const Term& pred = n->sub[0];
      Term rec = tm::lam("_", ty::unit(), tm::nrec(pred, base, step));
      return apply(step_fn(step, m), tm::pair(pred, rec), cost);
    }
    case TermKind::LRec: {
      Term l = run(m->sub[0], cost);
      Term base = run(m->sub[1], cost);
      Term step = run(m->sub[2], cost);
      if (base->kind != TermKind::Lam) stuck(m, "lrec base is not a function");
      if (l->kind == TermKind::Nil) return apply(base, tm::unit(), cost);
      if (l->kind != TermKind::Cons) stuck(m, "lrec on a non-list");
      const Term& tail = l->sub[1];
      Term arg = tm::pair(l->sub[0], tm::with(tail, tm::lrec(tail, base, step)));
      return apply(step_fn(step, m), arg, cost);
    }
    case TermKind::TreeRec: {
      Term t = run(m->sub[0], cost);
      std::vector<Term> branches;
      for (std::size_t i = 1; i < 5; ++i) branches.push_back(run(m->sub[i], cost));
      if (branches[0]->kind != TermKind::Lam) stuck(m, "treerec base is not a function");
      if (t->kind == TermKind::Emp) return apply(branches[0], tm::unit(), cost);
      if (t->kind != TermKind::Node) stuck(m, "treerec on a non-tree");
      const Term& l = t->sub[2];
      const Term& r = t->sub[3];
      if (l->kind == TermKind::Emp) {
        const Term& fn = step_fn(branches[1], m);
        // The binder annotation is A (x) (N (x) (1 (+) view)).
        const Type& sum = fn->ty->b->b;
        Term right = r->kind == TermKind::Emp ? tm::inl(sum->b, tm::unit())
                                              : tm::inr(sum->a, tree_view(r, branches));
        return apply(fn, tm::pair(t->sub[0], tm::pair(t->sub[1], right)), cost);
      }
      if (r->kind == TermKind::Emp)
        return apply(step_fn(branches[2], m),
                     tm::pair(t->sub[0], tm::pair(t->sub[1], tree_view(l, branches))), cost);
      return apply(step_fn(branches[3], m),
                   tm::pair(t->sub[0], tm::pair(t->sub[1], tm::pair(tree_view(l, branches),
                                                                      tree_view(r, branches)))),
                   cost);
    }
    case TermKind::Tick:
      note("tick", 1, 0);
      cost.n += 1;
      return run(m->sub[0], cost);
    case TermKind::Create: {
      std::int64_t c = closed_credit(m->credit, m);
      note("create", 0, c);
      cost.r = checked_add(cost.r, c);
      return run(m->sub[0], cost);
    }
    case TermKind::Spend: {
      std::int64_t c = closed_credit(m->credit, m);
      note("spend", 0, -c);
      cost.r = checked_add(cost.r, -c);
      return run(m->sub[0], cost);
    }
    case TermKind::Save: {
      CostPair inner;
      Term v = run(m->sub[0], inner);
      std::int64_t r = repeat(m->mult, inner.r, "save");
      note("save", 0, r - inner.r);
      add(cost, {inner.n, r});
      if (v == m->sub[0]) return m;
      auto copy = std::make_shared<TermNode>(*m);
      copy->sub[0] = v;
      return copy;
    }
    case TermKind::Transfer: {
      CostPair first;
      Term s = run(m->sub[0], first);
      if (s->kind != TermKind::Save) stuck(m, "transfer of a non-saved value");
      std::int64_t r1 = repeat(m->mult, first.r, "transfer");
      note("transfer", 0, r1 - first.r);
      add(cost, {first.n, r1});
      return run(subst(m->sub[1], m->x, s->sub[0]), cost);
    }
    case TermKind::Unpack: {
      Term p = run(m->sub[0], cost);
      if (p->kind != TermKind::Pack) stuck(m, "unpack of a non-package");
      Term body = subst_credit(m->sub[1], m->x, p->credit);
      return run(subst(body, m->y, p->sub[0]), cost);
    }
  }
  stuck(m, "unknown form");
}

// ---- erasure ----

bool inert(const Type& t) {
  switch (t->kind) {
    case TypeKind::Lolli:
    case TypeKind::With:
      return false;
    case TypeKind::Unit:
    case TypeKind::Nat:
      return true;
    default:
      return (!t->a || inert(t->a)) && (!t->b || inert(t->b));
  }
}

using Scope = std::map<std::string, Type>;

class Eraser {
public:
  stlc::Term run(const DerivationPtr& d, const Scope& scope);

private:
  stlc::Term thunk(stlc::Term body) { return stlc::lam("_", std::move(body)); }

  bool ghost(const DerivationPtr& d, const Scope& scope) {
    if (strip_modalities(d->type)->kind != TypeKind::Unit) return false;
    if (d->term->kind == TermKind::Unit) return false;
    if (contains_tick(d->term)) return false;
    for (const auto& x : free_vars(d->term)) {
      auto it = scope.find(x);
      if (it == scope.end() || !inert(it->second)) return false;
    }
    return true;
  }

  stlc::Term sub(const DerivationPtr& d, std::size_t i, const Scope& scope) {
    return run(d->premises.at(i), scope);
  }
};

Scope bind(Scope s, const std::string& x, const Type& t) {
  s[x] = t;
  return s;
}

stlc::Term Eraser::run(const DerivationPtr& d, const Scope& scope) {
  using stlc::Kind;
  const Term& m = d->term;
  if (ghost(d, scope)) return stlc::unit();
  switch (m->kind) {
    case TermKind::Var:
      return stlc::var(m->x);
    case TermKind::Lam:
      return stlc::lam(m->x, sub(d, 0, bind(scope, m->x, m->ty)));
    case TermKind::App:
      return stlc::app(sub(d, 0, scope), sub(d, 1, scope));
    case TermKind::Pair:
      return stlc::pair(sub(d, 0, scope), sub(d, 1, scope));
    case TermKind::LetPair: {
      const Type& t = d->premises[0]->type;
      Scope inner = bind(bind(scope, m->x, t->a), m->y, t->b);
      return stlc::make(Kind::LetPair, {sub(d, 0, scope), sub(d, 1, inner)}, m->x, m->y);
    }
    case TermKind::Inl:
      return stlc::make(Kind::Inl, {sub(d, 0, scope)});
    case TermKind::Inr:
      return stlc::make(Kind::Inr, {sub(d, 0, scope)});
    case TermKind::Case: {
      const Type& t = d->premises[0]->type;
      return stlc::make(Kind::Case,
                        {sub(d, 0, scope), sub(d, 1, bind(scope, m->x, t->a)), sub(d, 2, bind(scope, m->y, t->b))},
                        m->x, m->y);
    }
    case TermKind::With:
      return stlc::pair(thunk(sub(d, 0, scope)), thunk(sub(d, 1, scope)));
    case TermKind::Fst:
    case TermKind::Snd: {
      std::string pick = m->kind == TermKind::Fst ? "l" : "r";
      return stlc::make(Kind::LetPair,
                        {sub(d, 0, scope), stlc::app(stlc::var(pick), stlc::unit())}, "l", "r");
    }
    case TermKind::Unit:
      return stlc::unit();
    case TermKind::Zero:
      return stlc::make(Kind::Zero);
    case TermKind::Succ:
      return stlc::make(Kind::Succ, {sub(d, 0, scope)});
    case TermKind::NRec:
      return stlc::make(Kind::NRec, {sub(d, 0, scope), sub(d, 1, scope), sub(d, 2, scope)});
    case TermKind::Nil:
      return stlc::make(Kind::Nil);
    case TermKind::Cons:
      return stlc::make(Kind::Cons, {sub(d, 0, scope), sub(d, 1, scope)});
    case TermKind::LRec:
      return stlc::make(Kind::LRec, {sub(d, 0, scope), sub(d, 1, scope), sub(d, 2, scope)});
    case TermKind::Emp:
      return stlc::make(Kind::Emp);
    case TermKind::Node:
      return stlc::make(Kind::Node, {sub(d, 0, scope), sub(d, 1, scope), sub(d, 2, scope), sub(d, 3, scope)});
    case TermKind::TreeRec: {
      std::vector<stlc::Term> parts;
      for (std::size_t i = 0; i < 5; ++i) parts.push_back(sub(d, i, scope));
      return stlc::make(Kind::TreeRec, std::move(parts));
    }
    case TermKind::Tick:
      return stlc::make(Kind::Tick, {sub(d, 0, scope)});
    case TermKind::Create:
    case TermKind::Spend:
    case TermKind::Save:
    case TermKind::Pack:
      return sub(d, 0, scope);
    case TermKind::Transfer: {
      const Type& t = d->premises[0]->type;
      return stlc::make(Kind::Let, {sub(d, 0, scope), sub(d, 1, bind(scope, m->x, t->a))}, m->x);
    }
    case TermKind::Unpack: {
      const Type& t = d->premises[0]->type;
      return stlc::make(Kind::Let, {sub(d, 0, scope), sub(d, 1, bind(scope, m->y, t->a))}, m->y);
    }
    case TermKind::Let: {
      const Type& t = d->premises[0]->type;
      return stlc::make(Kind::Let, {sub(d, 0, scope), sub(d, 1, bind(scope, m->x, t))}, m->x);
    }
  }
  throw StuckTerm("erase: unknown form");
}

}  // namespace

EvalOutcome eval(const Term& m, const EvalOptions& opts) {
  EvalOutcome out;
  Evaluator ev(opts.fuel == 0 ? default_fuel() : opts.fuel, opts.trace ? &out.trace : nullptr);
  out.value = ev.run(m, out.cost);
  return out;
}

Type strip_modalities(const Type& t) {
  Type cur = t;
  while (cur->kind == TypeKind::Bang || cur->kind == TypeKind::Exists) cur = cur->a;
  return cur;
}

stlc::Term erase(const DerivationPtr& d) {
  Eraser e;
  return e.run(d, {});
}

stlc::Term erase(const Term& m) { return erase(synthesize(TypingContext{}, m).derivation); }

}  // namespace amort::la
