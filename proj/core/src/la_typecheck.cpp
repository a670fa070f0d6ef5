#include "amort/la_typecheck.hpp"

#include <algorithm>

#include "amort/errors.hpp"

namespace amort::la {

TypingContext TypingContext::with_var(const std::string& x, Type a) const {
  TypingContext out = *this;
  out.term_vars_[x] = std::move(a);
  return out;
}

TypingContext TypingContext::with_credit(const std::string& alpha) const {
  TypingContext out = *this;
  if (!has_credit(alpha)) out.credit_vars_.push_back(alpha);
  return out;
}

const Type* TypingContext::lookup(const std::string& x) const {
  auto it = term_vars_.find(x);
  return it == term_vars_.end() ? nullptr : &it->second;
}

bool TypingContext::has_credit(const std::string& alpha) const {
  return std::find(credit_vars_.begin(), credit_vars_.end(), alpha) != credit_vars_.end();
}

bool TypingContext::binds(const std::string& name) const {
  return term_vars_.count(name) != 0 || has_credit(name);
}

namespace {

std::string brief(const Term& m) {
  std::string s = show(m);
  if (s.size() > 120) s = s.substr(0, 117) + "...";
  return s;
}

[[noreturn]] void mismatch(const char* rule, const Term& m, const std::string& what) {
  throw TypeMismatch(std::string(rule) + ": " + what + " in " + brief(m));
}

void check_credit(const TypingContext& ctx, const CreditTerm& c, const Term* at) {
  for (const auto& v : c.free_vars()) {
    if (!ctx.has_credit(v))
      throw IllFormedCredit("credit variable '" + v + "' not in scope" +
                            (at ? " in " + brief(*at) : std::string()));
  }
}

void check_mult(ExtNat k, const char* where) {
  if (k.is_zero()) throw NonPositiveMultiplicity(std::string(where) + ": multiplicity must be positive");
}

Type step_type(const Type& arg, const Type& result) {
  return ty::bang(ExtNat::inf(), CreditTerm(), ty::lolli(arg, result));
}

Type tree_view(const Type& elem, const Type& result) {
  Type child = ty::with(ty::tree(elem), result);
  return ty::tensor(elem, ty::tensor(ty::nat(), ty::tensor(child, child)));
}

class Checker {
public:
  explicit Checker(const CheckOptions& opts) : opts_(opts) {}

  DerivationPtr run(const TypingContext& ctx, const Term& m);

private:
  DerivationPtr leaf(const char* rule, const Term& m, Type t, ResourceTerm f) {
    auto d = std::make_shared<Derivation>();
    d->rule = rule;
    d->term = m;
    d->type = std::move(t);
    d->resources = std::move(f);
    return d;
  }

  DerivationPtr node(const char* rule, const Term& m, Type t, ResourceTerm f,
                     std::vector<DerivationPtr> premises) {
    auto copy = std::make_shared<TermNode>(*m);
    for (std::size_t i = 0; i < premises.size() && i < copy->sub.size(); ++i)
      copy->sub[i] = premises[i]->term;
    auto d = std::make_shared<Derivation>();
    d->rule = rule;
    d->term = copy;
    d->type = std::move(t);
    d->resources = std::move(f);
    d->premises = std::move(premises);
    return d;
  }

  // Renames a term binder stored in `field` of m (bound in child `child`)
  // when it clashes with the context.
  Term freshen(const TypingContext& ctx, const Term& m, std::string TermNode::*field,
               std::size_t child) {
    const std::string& b = m.get()->*field;
    if (!ctx.binds(b)) return m;
    std::set<std::string> avoid;
    for (const auto& [name, _] : ctx.term_vars()) avoid.insert(name);
    for (const auto& name : ctx.credit_vars()) avoid.insert(name);
    auto fv = free_vars(m->sub[child]);
    avoid.insert(fv.begin(), fv.end());
    avoid.insert(m->x);
    avoid.insert(m->y);
    std::string fresh = fresh_name(b, avoid);
    auto copy = std::make_shared<TermNode>(*m);
    copy->sub[child] = subst(m->sub[child], b, tm::var(fresh));
    copy.get()->*field = fresh;
    return copy;
  }

  void at_most(const char* rule, const Term& m, const ResourceTerm& g, const std::string& x, ExtNat k) {
    ExtNat used = g.coeff(x);
    if (used > k)
      throw InsufficientResources(std::string(rule) + ": variable '" + x + "' used " +
                                      used.to_string() + " times but only " + k.to_string() +
                                      " allowed in " + brief(m),
                                  ResourceTerm::use(x, monus(used, k)));
  }

  Type expect_kind(const char* rule, const Term& m, const Type& t, TypeKind k, const char* what) {
    if (t->kind != k) mismatch(rule, m, std::string("expected ") + what + ", found " + show(t));
    return t;
  }

  void expect_equal(const char* rule, const Term& m, const Type& want, const Type& got) {
    if (!type_equal(want, got)) mismatch(rule, m, "expected " + show(want) + ", found " + show(got));
  }

  CheckOptions opts_;
};

DerivationPtr Checker::run(const TypingContext& ctx, const Term& m0) {
  Term m = m0;
  switch (m->kind) {
    case TermKind::Var: {
      const Type* t = ctx.lookup(m->x);
      if (!t) throw UnboundVariable("unbound variable '" + m->x + "'");
      return leaf("var", m, *t, ResourceTerm::use(m->x));
    }
    case TermKind::Lam: {
      check_type(ctx, m->ty);
      m = freshen(ctx, m, &TermNode::x, 0);
      auto body = run(ctx.with_var(m->x, m->ty), m->sub[0]);
      at_most("lam", m, body->resources, m->x, 1);
      return node("lam", m, ty::lolli(m->ty, body->type), body->resources.without(m->x), {body});
    }
    case TermKind::App: {
      auto f = run(ctx, m->sub[0]);
      auto a = run(ctx, m->sub[1]);
      expect_kind("app", m, f->type, TypeKind::Lolli, "a function");
      expect_equal("app", m, f->type->a, a->type);
      return node("app", m, f->type->b, f->resources + a->resources, {f, a});
    }
    case TermKind::Pair: {
      auto a = run(ctx, m->sub[0]);
      auto b = run(ctx, m->sub[1]);
      return node("pair", m, ty::tensor(a->type, b->type), a->resources + b->resources, {a, b});
    }
    case TermKind::LetPair: {
      check_mult(m->mult, "let-pair");
      auto scrut = run(ctx, m->sub[0]);
      expect_kind("let-pair", m, scrut->type, TypeKind::Tensor, "a tensor");
      if (m->x == m->y) mismatch("let-pair", m, "duplicate binder");
      m = freshen(ctx, m, &TermNode::x, 1);
      m = freshen(ctx, m, &TermNode::y, 1);
      auto body = run(ctx.with_var(m->x, scrut->type->a).with_var(m->y, scrut->type->b), m->sub[1]);
      at_most("let-pair", m, body->resources, m->x, m->mult);
      at_most("let-pair", m, body->resources, m->y, m->mult);
      ResourceTerm f = m->mult * scrut->resources + body->resources.without(m->x).without(m->y);
      return node("let-pair", m, body->type, f, {scrut, body});
    }
    case TermKind::Inl:
    case TermKind::Inr: {
      check_type(ctx, m->ty);
      auto a = run(ctx, m->sub[0]);
      bool left = m->kind == TermKind::Inl;
      Type t = left ? ty::plus(a->type, m->ty) : ty::plus(m->ty, a->type);
      return node(left ? "inl" : "inr", m, t, a->resources, {a});
    }
    case TermKind::Case: {
      check_mult(m->mult, "case");
      auto scrut = run(ctx, m->sub[0]);
      expect_kind("case", m, scrut->type, TypeKind::Plus, "a sum");
      m = freshen(ctx, m, &TermNode::x, 1);
      m = freshen(ctx, m, &TermNode::y, 2);
      auto l = run(ctx.with_var(m->x, scrut->type->a), m->sub[1]);
      auto r = run(ctx.with_var(m->y, scrut->type->b), m->sub[2]);
      expect_equal("case", m, l->type, r->type);
      at_most("case", m, l->resources, m->x, m->mult);
      at_most("case", m, r->resources, m->y, m->mult);
      ResourceTerm f = m->mult * scrut->resources +
                       join(l->resources.without(m->x), r->resources.without(m->y));
      return node("case", m, l->type, f, {scrut, l, r});
    }
    case TermKind::With: {
      auto a = run(ctx, m->sub[0]);
      auto b = run(ctx, m->sub[1]);
      return node("with", m, ty::with(a->type, b->type), join(a->resources, b->resources), {a, b});
    }
    case TermKind::Fst:
    case TermKind::Snd: {
      bool first = m->kind == TermKind::Fst;
      const char* rule = first ? "fst" : "snd";
      auto a = run(ctx, m->sub[0]);
      expect_kind(rule, m, a->type, TypeKind::With, "an additive pair");
      return node(rule, m, first ? a->type->a : a->type->b, a->resources, {a});
    }
    case TermKind::Unit:
      return leaf("unit", m, ty::unit(), {});
    case TermKind::Zero:
      return leaf("zero", m, ty::nat(), {});
    case TermKind::Succ: {
      auto a = run(ctx, m->sub[0]);
      expect_equal("succ", m, ty::nat(), a->type);
      return node("succ", m, ty::nat(), a->resources, {a});
    }
    case TermKind::NRec: {
      auto n = run(ctx, m->sub[0]);
      auto base = run(ctx, m->sub[1]);
      auto step = run(ctx, m->sub[2]);
      expect_equal("nrec", m, ty::nat(), n->type);
      expect_kind("nrec", m, base->type, TypeKind::Lolli, "a thunk 1 -o C");
      expect_equal("nrec", m, ty::unit(), base->type->a);
      Type c = base->type->b;
      expect_equal("nrec", m, step_type(ty::tensor(ty::nat(), ty::lolli(ty::unit(), c)), c), step->type);
      return node("nrec", m, c, n->resources + base->resources + step->resources, {n, base, step});
    }
    case TermKind::Nil:
      check_type(ctx, m->ty);
      return leaf("nil", m, ty::list(m->ty), {});
    case TermKind::Cons: {
      auto h = run(ctx, m->sub[0]);
      auto t = run(ctx, m->sub[1]);
      expect_equal("cons", m, ty::list(h->type), t->type);
      return node("cons", m, t->type, h->resources + t->resources, {h, t});
    }
    case TermKind::LRec: {
      auto l = run(ctx, m->sub[0]);
      auto base = run(ctx, m->sub[1]);
      auto step = run(ctx, m->sub[2]);
      expect_kind("lrec", m, l->type, TypeKind::List, "a list");
      expect_kind("lrec", m, base->type, TypeKind::Lolli, "a thunk 1 -o C");
      expect_equal("lrec", m, ty::unit(), base->type->a);
      Type a = l->type->a, c = base->type->b;
      expect_equal("lrec", m, step_type(ty::tensor(a, ty::with(l->type, c)), c), step->type);
      return node("lrec", m, c, l->resources + base->resources + step->resources, {l, base, step});
    }
    case TermKind::Emp:
      check_type(ctx, m->ty);
      return leaf("emp", m, ty::tree(m->ty), {});
    case TermKind::Node: {
      auto e = run(ctx, m->sub[0]);
      auto s = run(ctx, m->sub[1]);
      auto l = run(ctx, m->sub[2]);
      auto r = run(ctx, m->sub[3]);
      expect_equal("node", m, ty::nat(), s->type);
      expect_equal("node", m, ty::tree(e->type), l->type);
      expect_equal("node", m, ty::tree(e->type), r->type);
      return node("node", m, l->type, e->resources + s->resources + l->resources + r->resources,
                  {e, s, l, r});
    }
    case TermKind::TreeRec: {
      std::vector<DerivationPtr> ps;
      for (const auto& child : m->sub) ps.push_back(run(ctx, child));
      expect_kind("treerec", m, ps[0]->type, TypeKind::Tree, "a tree");
      expect_kind("treerec", m, ps[1]->type, TypeKind::Lolli, "a thunk 1 -o C");
      expect_equal("treerec", m, ty::unit(), ps[1]->type->a);
      Type a = ps[0]->type->a, c = ps[1]->type->b;
      Type view = tree_view(a, c);
      expect_equal("treerec", m,
                   step_type(ty::tensor(a, ty::tensor(ty::nat(), ty::plus(ty::unit(), view))), c),
                   ps[2]->type);
      expect_equal("treerec", m, step_type(ty::tensor(a, ty::tensor(ty::nat(), view)), c), ps[3]->type);
      expect_equal("treerec", m,
                   step_type(ty::tensor(a, ty::tensor(ty::nat(), ty::tensor(view, view))), c),
                   ps[4]->type);
      ResourceTerm f;
      for (const auto& p : ps) f = f + p->resources;
      return node("treerec", m, c, f, ps);
    }
    case TermKind::Tick: {
      auto a = run(ctx, m->sub[0]);
      return node("tick", m, a->type, a->resources, {a});
    }
    case TermKind::Create: {
      check_credit(ctx, m->credit, &m);
      auto a = run(ctx, m->sub[0]);
      ResourceTerm f = a->resources.with_bank(monus(a->resources.bank(), m->credit));
      return node("create", m, a->type, f, {a});
    }
    case TermKind::Spend: {
      check_credit(ctx, m->credit, &m);
      auto a = run(ctx, m->sub[0]);
      ResourceTerm f = opts_.ignore_spend ? a->resources
                                          : a->resources + ResourceTerm::credits(m->credit);
      return node("spend", m, a->type, f, {a});
    }
    case TermKind::Save: {
      check_mult(m->mult, "save");
      check_credit(ctx, m->credit, &m);
      auto a = run(ctx, m->sub[0]);
      ResourceTerm f = m->mult * a->resources + ResourceTerm::credits(m->credit);
      return node("save", m, ty::bang(m->mult, m->credit, a->type), f, {a});
    }
    case TermKind::Transfer: {
      check_mult(m->mult, "transfer");
      auto scrut = run(ctx, m->sub[0]);
      expect_kind("transfer", m, scrut->type, TypeKind::Bang, "a !-type");
      m = freshen(ctx, m, &TermNode::x, 1);
      auto body = run(ctx.with_var(m->x, scrut->type->a), m->sub[1]);
      ExtNat k = scrut->type->mult;
      at_most("transfer", m, body->resources, m->x, k * m->mult);
      ResourceTerm rest = body->resources.without(m->x);
      rest = rest.with_bank(monus(rest.bank(), m->mult * scrut->type->credit));
      return node("transfer", m, body->type, m->mult * scrut->resources + rest, {scrut, body});
    }
    case TermKind::Pack: {
      check_credit(ctx, m->credit, &m);
      check_type(ctx, m->ty);
      expect_kind("pack", m, m->ty, TypeKind::Exists, "an existential annotation");
      auto a = run(ctx, m->sub[0]);
      expect_equal("pack", m, subst_credit(m->ty->a, m->ty->binder, m->credit), a->type);
      return node("pack", m, m->ty, a->resources, {a});
    }
    case TermKind::Unpack: {
      auto scrut = run(ctx, m->sub[0]);
      expect_kind("unpack", m, scrut->type, TypeKind::Exists, "an existential");
      if (ctx.binds(m->x) || free_credit_vars(m->sub[0]).count(m->x)) {
        std::set<std::string> avoid;
        for (const auto& [name, _] : ctx.term_vars()) avoid.insert(name);
        for (const auto& name : ctx.credit_vars()) avoid.insert(name);
        auto fc = free_credit_vars(m->sub[1]);
        avoid.insert(fc.begin(), fc.end());
        std::string fresh = fresh_name(m->x, avoid);
        auto copy = std::make_shared<TermNode>(*m);
        copy->sub[1] = subst_credit(m->sub[1], m->x, CreditTerm::var(fresh));
        copy->x = fresh;
        m = copy;
      }
      m = freshen(ctx, m, &TermNode::y, 1);
      Type opened = subst_credit(scrut->type->a, scrut->type->binder, CreditTerm::var(m->x));
      auto body = run(ctx.with_credit(m->x).with_var(m->y, opened), m->sub[1]);
      at_most("unpack", m, body->resources, m->y, 1);
      if (free_credit_vars(body->type).count(m->x))
        mismatch("unpack", m, "credit variable '" + m->x + "' escapes in the result type");
      ResourceTerm rest = body->resources.without(m->y);
      if (rest.bank().mentions(m->x))
        throw InsufficientResources("unpack: body demands credits " + rest.bank().to_string() +
                                        " mentioning the local variable '" + m->x + "'",
                                    ResourceTerm::credits(CreditTerm::var(m->x, rest.bank().coeff(m->x))));
      return node("unpack", m, body->type, scrut->resources + rest, {scrut, body});
    }
    case TermKind::Let: {
      auto bound = run(ctx, m->sub[0]);
      m = freshen(ctx, m, &TermNode::x, 1);
      auto body = run(ctx.with_var(m->x, bound->type), m->sub[1]);
      at_most("let", m, body->resources, m->x, 1);
      return node("let", m, body->type, bound->resources + body->resources.without(m->x), {bound, body});
    }
  }
  throw TypeMismatch("unknown term form");
}

}  // namespace

void check_type(const TypingContext& ctx, const Type& a) {
  if (!a) throw TypeMismatch("missing type annotation");
  switch (a->kind) {
    case TypeKind::Unit:
    case TypeKind::Nat:
      return;
    case TypeKind::Tensor:
    case TypeKind::Plus:
    case TypeKind::Lolli:
    case TypeKind::With:
      check_type(ctx, a->a);
      check_type(ctx, a->b);
      return;
    case TypeKind::List:
    case TypeKind::Tree:
      check_type(ctx, a->a);
      return;
    case TypeKind::Bang:
      check_mult(a->mult, "!-type");
      check_credit(ctx, a->credit, nullptr);
      check_type(ctx, a->a);
      return;
    case TypeKind::Exists:
      check_type(ctx.with_credit(a->binder), a->a);
      return;
  }
}

TypingResult synthesize(const TypingContext& ctx, const Term& m, const CheckOptions& opts) {
  Checker checker(opts);
  auto d = checker.run(ctx, m);
  return {d->type, d->resources, d};
}

DerivationPtr check(const TypingContext& ctx, const ResourceTerm& available, const Term& m,
                    const Type& expected, const CheckOptions& opts) {
  auto r = synthesize(ctx, m, opts);
  if (!type_equal(r.type, expected))
    throw TypeMismatch("check: expected " + show(expected) + ", found " + show(r.type));
  if (!resource_leq(r.resources, available)) {
    ResourceTerm deficit = monus(r.resources, available);
    throw InsufficientResources("check: needs " + r.resources.to_string() + " but only " +
                                    available.to_string() + " available (short " +
                                    deficit.to_string() + ")",
                                deficit);
  }
  return r.derivation;
}

namespace {

using Witness = std::pair<Term, Type>;

Witness fuse_nest(ExtNat k1, ExtNat k2, ExtNat l1, ExtNat l2, const Type& a) {
  Type src = ty::bang(k1 * k2, CreditTerm(l1 + k1 * l2), a);
  Type dst = ty::bang(k1, l1, ty::bang(k2, l2, a));
  return {tm::lam("x", src,
                  tm::transfer("y", tm::var("x"),
                               tm::save(k1, l1, tm::save(k2, l2, tm::var("y"))))),
          ty::lolli(src, dst)};
}

Witness fuse_unnest(ExtNat k1, ExtNat k2, ExtNat l1, ExtNat l2, const Type& a) {
  Type src = ty::bang(k1, l1, ty::bang(k2, l2, a));
  Type dst = ty::bang(k1 * k2, CreditTerm(l1 + k1 * l2), a);
  return {tm::lam("x", src,
                  tm::transfer("y", tm::var("x"),
                               tm::transfer("z", tm::var("y"),
                                            tm::save(k1 * k2, l1 + k1 * l2, tm::var("z")), k1))),
          ty::lolli(src, dst)};
}

Witness tensor_split(ExtNat k, ExtNat l1, ExtNat l2, const Type& a, const Type& b) {
  Type src = ty::bang(k, l1 + l2, ty::tensor(a, b));
  Type dst = ty::tensor(ty::bang(k, l1, a), ty::bang(k, l2, b));
  return {tm::lam("x", src,
                  tm::transfer("p", tm::var("x"),
                               tm::let_pair("u", "v", tm::var("p"),
                                            tm::pair(tm::save(k, l1, tm::var("u")),
                                                     tm::save(k, l2, tm::var("v"))),
                                            k))),
          ty::lolli(src, dst)};
}

Witness tensor_join(ExtNat k, ExtNat l1, ExtNat l2, const Type& a, const Type& b) {
  Type src = ty::tensor(ty::bang(k, l1, a), ty::bang(k, l2, b));
  Type dst = ty::bang(k, l1 + l2, ty::tensor(a, b));
  return {tm::lam("x", src,
                  tm::let_pair("p", "q", tm::var("x"),
                               tm::transfer("u", tm::var("p"),
                                            tm::transfer("v", tm::var("q"),
                                                         tm::save(k, l1 + l2,
                                                                  tm::pair(tm::var("u"), tm::var("v"))))))),
          ty::lolli(src, dst)};
}

Witness plus_split(ExtNat k, ExtNat l, const Type& a, const Type& b) {
  Type src = ty::bang(k, l, ty::plus(a, b));
  Type ba = ty::bang(k, l, a), bb = ty::bang(k, l, b);
  return {tm::lam("x", src,
                  tm::transfer("s", tm::var("x"),
                               tm::case_(tm::var("s"), "u", tm::inl(bb, tm::save(k, l, tm::var("u"))), "v",
                                         tm::inr(ba, tm::save(k, l, tm::var("v"))), k))),
          ty::lolli(src, ty::plus(ba, bb))};
}

Witness plus_join(ExtNat k, ExtNat l, const Type& a, const Type& b) {
  Type src = ty::plus(ty::bang(k, l, a), ty::bang(k, l, b));
  return {tm::lam("x", src,
                  tm::case_(tm::var("x"), "p",
                            tm::transfer("u", tm::var("p"), tm::save(k, l, tm::inl(b, tm::var("u")))), "q",
                            tm::transfer("v", tm::var("q"), tm::save(k, l, tm::inr(a, tm::var("v")))))),
          ty::lolli(src, ty::bang(k, l, ty::plus(a, b)))};
}

std::string label(const char* law, std::initializer_list<ExtNat> params) {
  std::string s = law;
  s += "(";
  bool first = true;
  for (ExtNat p : params) {
    if (!first) s += ",";
    s += p.to_string();
    first = false;
  }
  return s + ")";
}

}  // namespace

std::vector<FusionWitness> fusion_witnesses() {
  const Type a = ty::nat();
  const Type b = ty::plus(ty::unit(), ty::unit());
  std::vector<FusionWitness> out;
  auto add = [&out](std::string name, Witness w) {
    out.push_back({std::move(name), std::move(w.first), std::move(w.second)});
  };

  struct Nest { ExtNat k1, k2, l1, l2; };
  for (Nest n : {Nest{2, 1, 1, 1}, Nest{1, 2, 0, 2}, Nest{2, 2, 2, 0}}) {
    add(label("nest-fuse", {n.k1, n.k2, n.l1, n.l2}), fuse_nest(n.k1, n.k2, n.l1, n.l2, a));
    add(label("nest-split", {n.k1, n.k2, n.l1, n.l2}), fuse_unnest(n.k1, n.k2, n.l1, n.l2, a));
  }
  struct Pair { ExtNat k, l1, l2; };
  for (Pair p : {Pair{1, 1, 1}, Pair{2, 0, 2}, Pair{1, 2, 0}}) {
    add(label("tensor-split", {p.k, p.l1, p.l2}), tensor_split(p.k, p.l1, p.l2, a, b));
    add(label("tensor-join", {p.k, p.l1, p.l2}), tensor_join(p.k, p.l1, p.l2, a, b));
  }
  struct Sum { ExtNat k, l; };
  for (Sum s : {Sum{1, 0}, Sum{2, 1}, Sum{1, 2}}) {
    add(label("plus-split", {s.k, s.l}), plus_split(s.k, s.l, a, b));
    add(label("plus-join", {s.k, s.l}), plus_join(s.k, s.l, a, b));
  }
  return out;
}

}  // namespace amort::la
