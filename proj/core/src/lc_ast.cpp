#include "amort/lc_ast.hpp"

#include <utility>

#include "amort/la_ast.hpp"

namespace amort::lc {

namespace {

Type make_type(TypeKind k, Type a = nullptr, Type b = nullptr) {
  auto n = std::make_shared<TypeNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

}  // namespace

namespace ty {
Type cost() {
  static const Type t = make_type(TypeKind::Cost);
  return t;
}
Type credit() {
  static const Type t = make_type(TypeKind::Credit);
  return t;
}
Type unit() {
  static const Type t = make_type(TypeKind::Unit);
  return t;
}
Type nat() {
  static const Type t = make_type(TypeKind::Nat);
  return t;
}
Type prod(Type a, Type b) { return make_type(TypeKind::Prod, std::move(a), std::move(b)); }
Type sum(Type a, Type b) { return make_type(TypeKind::Sum, std::move(a), std::move(b)); }
Type arrow(Type a, Type b) { return make_type(TypeKind::Arrow, std::move(a), std::move(b)); }
Type list(Type a) { return make_type(TypeKind::List, std::move(a)); }
Type tree(Type a) { return make_type(TypeKind::Tree, std::move(a)); }
}  // namespace ty

bool type_equal(const Type& a, const Type& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  return type_equal(a->a, b->a) && type_equal(a->b, b->b);
}

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Var: return "var";
    case Kind::Lam: return "lam";
    case Kind::App: return "app";
    case Kind::Pair: return "pair";
    case Kind::Fst: return "fst";
    case Kind::Snd: return "snd";
    case Kind::Inl: return "inl";
    case Kind::Inr: return "inr";
    case Kind::Case: return "case";
    case Kind::Unit: return "unit";
    case Kind::Zero: return "zero";
    case Kind::Succ: return "succ";
    case Kind::NRec: return "nrec";
    case Kind::Nil: return "nil";
    case Kind::Cons: return "cons";
    case Kind::LRec: return "lrec";
    case Kind::Emp: return "emp";
    case Kind::Node: return "node";
    case Kind::TreeRec: return "treerec";
    case Kind::CostConst: return "cost";
    case Kind::CostAdd: return "+c";
    case Kind::CostMax: return "max";
    case Kind::CostScale: return "scale";
    case Kind::CostNeg: return "neg";
    case Kind::CreditConst: return "credit";
    case Kind::CreditAdd: return "+$";
    case Kind::CreditScale: return "scale$";
    case Kind::ToCost: return "toC";
  }
  return "?";
}

namespace {

Term make(Kind k, std::vector<Term> sub = {}) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->sub = std::move(sub);
  return n;
}

Term make_typed(Kind k, Type t, std::vector<Term> sub = {}) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->ty = std::move(t);
  n->sub = std::move(sub);
  return n;
}

bool binds(const Node& n, std::size_t child, const std::string& x) {
  switch (n.kind) {
    case Kind::Lam: return child == 0 && n.x == x;
    case Kind::Case: return (child == 1 && n.x == x) || (child == 2 && n.y == x);
    default: return false;
  }
}

void collect_names(const Term& m, std::set<std::string>& out) {
  if (!m->x.empty()) out.insert(m->x);
  if (!m->y.empty()) out.insert(m->y);
  for (const auto& c : m->sub) collect_names(c, out);
}

}  // namespace

namespace tm {
Term var(std::string x) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->x = std::move(x);
  return n;
}
Term lam(std::string x, Type t, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Lam;
  n->x = std::move(x);
  n->ty = std::move(t);
  n->sub = {std::move(body)};
  return n;
}
Term app(Term f, Term a) { return make(Kind::App, {std::move(f), std::move(a)}); }
Term app(Term f, std::initializer_list<Term> args) {
  for (const auto& a : args) f = app(f, a);
  return f;
}
Term pair(Term a, Term b) { return make(Kind::Pair, {std::move(a), std::move(b)}); }
Term fst(Term m) { return make(Kind::Fst, {std::move(m)}); }
Term snd(Term m) { return make(Kind::Snd, {std::move(m)}); }
Term inl(Type other, Term m) { return make_typed(Kind::Inl, std::move(other), {std::move(m)}); }
Term inr(Type other, Term m) { return make_typed(Kind::Inr, std::move(other), {std::move(m)}); }
Term case_(Term m, std::string x, Term l, std::string y, Term r) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Case;
  n->x = std::move(x);
  n->y = std::move(y);
  n->sub = {std::move(m), std::move(l), std::move(r)};
  return n;
}
Term unit() {
  static const Term t = make(Kind::Unit);
  return t;
}
Term zero() {
  static const Term t = make(Kind::Zero);
  return t;
}
Term succ(Term m) { return make(Kind::Succ, {std::move(m)}); }
Term numeral(std::uint64_t n) {
  Term t = zero();
  for (std::uint64_t i = 0; i < n; ++i) t = succ(t);
  return t;
}
Term nrec(Term m, Term base, Term step) {
  return make(Kind::NRec, {std::move(m), std::move(base), std::move(step)});
}
Term nil(Type elem) { return make_typed(Kind::Nil, std::move(elem)); }
Term cons(Term h, Term t) { return make(Kind::Cons, {std::move(h), std::move(t)}); }
Term lrec(Term m, Term base, Term step) {
  return make(Kind::LRec, {std::move(m), std::move(base), std::move(step)});
}
Term emp(Type elem) { return make_typed(Kind::Emp, std::move(elem)); }
Term node(Term elem, Term size, Term left, Term right) {
  return make(Kind::Node, {std::move(elem), std::move(size), std::move(left), std::move(right)});
}
Term treerec(Term m, Term base, Term left_emp, Term right_emp, Term both) {
  return make(Kind::TreeRec,
              {std::move(m), std::move(base), std::move(left_emp), std::move(right_emp), std::move(both)});
}
Term cost(ExtInt c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::CostConst;
  n->cost = c;
  return n;
}
Term add(Term a, Term b) { return make(Kind::CostAdd, {std::move(a), std::move(b)}); }
Term max(Term a, Term b) { return make(Kind::CostMax, {std::move(a), std::move(b)}); }
Term scale(ExtNat k, Term m) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::CostScale;
  n->mult = k;
  n->sub = {std::move(m)};
  return n;
}
Term neg(Term m) { return make(Kind::CostNeg, {std::move(m)}); }
Term credit(ExtNat c) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::CreditConst;
  n->amount = c;
  return n;
}
Term credit_add(Term a, Term b) { return make(Kind::CreditAdd, {std::move(a), std::move(b)}); }
Term credit_scale(ExtNat k, Term m) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::CreditScale;
  n->mult = k;
  n->sub = {std::move(m)};
  return n;
}
Term to_cost(Term m) { return make(Kind::ToCost, {std::move(m)}); }

Term credit_term(const CreditTerm& c) {
  Term out;
  for (const auto& [name, k] : c.coeffs()) {
    Term part = k == ExtNat(1) ? var(name) : credit_scale(k, var(name));
    out = out ? credit_add(out, part) : part;
  }
  if (!out) return credit(c.constant());
  if (!c.constant().is_zero()) out = credit_add(out, credit(c.constant()));
  return out;
}
}  // namespace tm

std::set<std::string> free_vars(const Term& m) {
  std::set<std::string> out;
  if (m->kind == Kind::Var) {
    out.insert(m->x);
    return out;
  }
  for (std::size_t i = 0; i < m->sub.size(); ++i)
    for (const auto& v : free_vars(m->sub[i]))
      if (!binds(*m, i, v)) out.insert(v);
  return out;
}

namespace {

using Env = std::vector<std::pair<std::string, std::string>>;

int lookup(const Env& env, const std::string& x, bool left) {
  for (std::size_t i = env.size(); i-- > 0;)
    if ((left ? env[i].first : env[i].second) == x) return static_cast<int>(i);
  return -1;
}

bool alpha_env(const Term& a, const Term& b, Env& env) {
  if (a->kind != b->kind || a->sub.size() != b->sub.size()) return false;
  if (a->kind == Kind::Var) {
    int ia = lookup(env, a->x, true), ib = lookup(env, b->x, false);
    if (ia != ib) return false;
    return ia >= 0 || a->x == b->x;
  }
  if (!(a->cost == b->cost) || !(a->amount == b->amount) || !(a->mult == b->mult)) return false;
  if (static_cast<bool>(a->ty) != static_cast<bool>(b->ty)) return false;
  if (a->ty && !type_equal(a->ty, b->ty)) return false;
  for (std::size_t i = 0; i < a->sub.size(); ++i) {
    std::size_t pushed = 0;
    if (a->kind == Kind::Lam && i == 0) {
      env.emplace_back(a->x, b->x);
      ++pushed;
    } else if (a->kind == Kind::Case && i == 1) {
      env.emplace_back(a->x, b->x);
      ++pushed;
    } else if (a->kind == Kind::Case && i == 2) {
      env.emplace_back(a->y, b->y);
      ++pushed;
    }
    bool eq = alpha_env(a->sub[i], b->sub[i], env);
    env.resize(env.size() - pushed);
    if (!eq) return false;
  }
  return true;
}

Term subst_impl(const Term& e, const std::string& x, const Term& v, const std::set<std::string>& fv) {
  if (e->kind == Kind::Var) return e->x == x ? v : e;
  if (e->sub.empty()) return e;
  auto copy = std::make_shared<Node>(*e);
  bool changed = false;
  for (std::size_t i = 0; i < e->sub.size(); ++i) {
    if (binds(*copy, i, x)) continue;
    Term child = copy->sub[i];
    std::string* binder = nullptr;
    if (e->kind == Kind::Lam && i == 0) binder = &copy->x;
    if (e->kind == Kind::Case && i == 1) binder = &copy->x;
    if (e->kind == Kind::Case && i == 2) binder = &copy->y;
    if (binder && fv.count(*binder)) {
      std::set<std::string> avoid = fv;
      collect_names(child, avoid);
      avoid.insert(x);
      std::string fresh = la::fresh_name(*binder, avoid);
      child = subst_impl(child, *binder, tm::var(fresh), {fresh});
      *binder = fresh;
      changed = true;
    }
    Term replaced = subst_impl(child, x, v, fv);
    if (replaced != e->sub[i]) changed = true;
    copy->sub[i] = replaced;
  }
  return changed ? Term(copy) : e;
}

}  // namespace

bool alpha_equal(const Term& a, const Term& b) {
  if (a == b) return true;
  Env env;
  return alpha_env(a, b, env);
}

Term subst(const Term& e, const std::string& x, const Term& v) { return subst_impl(e, x, v, free_vars(v)); }

std::size_t term_size(const Term& m) {
  std::size_t n = 1;
  for (const auto& c : m->sub) n += term_size(c);
  return n;
}

bool numeral_value(const Term& m, std::uint64_t& out) {
  std::uint64_t n = 0;
  const Node* cur = m.get();
  while (cur->kind == Kind::Succ) {
    ++n;
    cur = cur->sub[0].get();
  }
  if (cur->kind != Kind::Zero) return false;
  out = n;
  return true;
}

}  // namespace amort::lc
