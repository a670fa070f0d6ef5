#include "amort/la_ast.hpp"

#include <functional>
#include <span>
#include <utility>

namespace amort::la {

// ---- types ----

namespace {

Type make_type(TypeKind k, Type a = nullptr, Type b = nullptr) {
  auto n = std::make_shared<TypeNode>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

using NameEnv = std::vector<std::pair<std::string, std::string>>;

std::string canon_left(const NameEnv& env, const std::string& name) {
  for (std::size_t i = env.size(); i-- > 0;)
    if (env[i].first == name) return "#" + std::to_string(i);
  return name;
}

std::string canon_right(const NameEnv& env, const std::string& name) {
  for (std::size_t i = env.size(); i-- > 0;)
    if (env[i].second == name) return "#" + std::to_string(i);
  return name;
}

CreditTerm canon_credit(const CreditTerm& c, const NameEnv& env, bool left) {
  CreditTerm out(c.constant());
  for (const auto& [name, k] : c.coeffs())
    out = out + CreditTerm::var(left ? canon_left(env, name) : canon_right(env, name), k);
  return out;
}

bool credit_equal(const CreditTerm& a, const CreditTerm& b, const NameEnv& env) {
  return canon_credit(a, env, true) == canon_credit(b, env, false);
}

bool type_equal_env(const Type& a, const Type& b, NameEnv& env) {
  if (a == b && env.empty()) return true;
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeKind::Unit:
    case TypeKind::Nat:
      return true;
    case TypeKind::Tensor:
    case TypeKind::Plus:
    case TypeKind::Lolli:
    case TypeKind::With:
      return type_equal_env(a->a, b->a, env) && type_equal_env(a->b, b->b, env);
    case TypeKind::List:
    case TypeKind::Tree:
      return type_equal_env(a->a, b->a, env);
    case TypeKind::Bang:
      return a->mult == b->mult && credit_equal(a->credit, b->credit, env) &&
             type_equal_env(a->a, b->a, env);
    case TypeKind::Exists: {
      env.emplace_back(a->binder, b->binder);
      bool eq = type_equal_env(a->a, b->a, env);
      env.pop_back();
      return eq;
    }
  }
  return false;
}

}  // namespace

namespace ty {
Type unit() {
  static const Type t = make_type(TypeKind::Unit);
  return t;
}
Type nat() {
  static const Type t = make_type(TypeKind::Nat);
  return t;
}
Type tensor(Type a, Type b) { return make_type(TypeKind::Tensor, std::move(a), std::move(b)); }
Type plus(Type a, Type b) { return make_type(TypeKind::Plus, std::move(a), std::move(b)); }
Type lolli(Type a, Type b) { return make_type(TypeKind::Lolli, std::move(a), std::move(b)); }
Type with(Type a, Type b) { return make_type(TypeKind::With, std::move(a), std::move(b)); }
Type list(Type a) { return make_type(TypeKind::List, std::move(a)); }
Type tree(Type a) { return make_type(TypeKind::Tree, std::move(a)); }
Type bang(ExtNat k, CreditTerm c, Type a) {
  auto n = std::make_shared<TypeNode>();
  n->kind = TypeKind::Bang;
  n->mult = k;
  n->credit = std::move(c);
  n->a = std::move(a);
  return n;
}
Type exists(std::string alpha, Type a) {
  auto n = std::make_shared<TypeNode>();
  n->kind = TypeKind::Exists;
  n->binder = std::move(alpha);
  n->a = std::move(a);
  return n;
}
}  // namespace ty

bool type_equal(const Type& a, const Type& b) {
  NameEnv env;
  return type_equal_env(a, b, env);
}

std::set<std::string> free_credit_vars(const Type& t) {
  std::set<std::string> out;
  if (!t) return out;
  switch (t->kind) {
    case TypeKind::Unit:
    case TypeKind::Nat:
      break;
    case TypeKind::Bang:
      out = t->credit.free_vars();
      [[fallthrough]];
    default: {
      for (const Type& child : {t->a, t->b}) {
        auto sub = free_credit_vars(child);
        out.insert(sub.begin(), sub.end());
      }
      if (t->kind == TypeKind::Exists) out.erase(t->binder);
    }
  }
  return out;
}

Type subst_credit(const Type& t, const std::string& alpha, const CreditTerm& c) {
  if (!t) return t;
  switch (t->kind) {
    case TypeKind::Unit:
    case TypeKind::Nat:
      return t;
    case TypeKind::Tensor:
    case TypeKind::Plus:
    case TypeKind::Lolli:
    case TypeKind::With: {
      Type a = subst_credit(t->a, alpha, c), b = subst_credit(t->b, alpha, c);
      if (a == t->a && b == t->b) return t;
      return make_type(t->kind, a, b);
    }
    case TypeKind::List:
    case TypeKind::Tree: {
      Type a = subst_credit(t->a, alpha, c);
      return a == t->a ? t : make_type(t->kind, a);
    }
    case TypeKind::Bang: {
      Type a = subst_credit(t->a, alpha, c);
      CreditTerm k = t->credit.subst(alpha, c);
      if (a == t->a && k == t->credit) return t;
      return ty::bang(t->mult, k, a);
    }
    case TypeKind::Exists: {
      if (t->binder == alpha) return t;
      auto fv = c.free_vars();
      if (!fv.count(t->binder)) {
        Type a = subst_credit(t->a, alpha, c);
        return a == t->a ? t : ty::exists(t->binder, a);
      }
      auto avoid = free_credit_vars(t->a);
      avoid.insert(fv.begin(), fv.end());
      avoid.insert(alpha);
      std::string fresh = fresh_name(t->binder, avoid);
      Type body = subst_credit(t->a, t->binder, CreditTerm::var(fresh));
      return ty::exists(fresh, subst_credit(body, alpha, c));
    }
  }
  return t;
}

// ---- terms ----

const char* term_kind_name(TermKind k) {
  switch (k) {
    case TermKind::Var: return "var";
    case TermKind::Lam: return "lam";
    case TermKind::App: return "app";
    case TermKind::Pair: return "pair";
    case TermKind::LetPair: return "letpair";
    case TermKind::Inl: return "inl";
    case TermKind::Inr: return "inr";
    case TermKind::Case: return "case";
    case TermKind::With: return "with";
    case TermKind::Fst: return "fst";
    case TermKind::Snd: return "snd";
    case TermKind::Unit: return "unit";
    case TermKind::Zero: return "zero";
    case TermKind::Succ: return "succ";
    case TermKind::NRec: return "nrec";
    case TermKind::Nil: return "nil";
    case TermKind::Cons: return "cons";
    case TermKind::LRec: return "lrec";
    case TermKind::Emp: return "emp";
    case TermKind::Node: return "node";
    case TermKind::TreeRec: return "treerec";
    case TermKind::Tick: return "tick";
    case TermKind::Create: return "create";
    case TermKind::Spend: return "spend";
    case TermKind::Save: return "save";
    case TermKind::Transfer: return "transfer";
    case TermKind::Pack: return "pack";
    case TermKind::Unpack: return "unpack";
    case TermKind::Let: return "let";
  }
  return "?";
}

namespace {

Term make(TermKind k, std::vector<Term> sub = {}) {
  auto n = std::make_shared<TermNode>();
  n->kind = k;
  n->sub = std::move(sub);
  return n;
}

struct BinderSlot {
  std::string TermNode::*field;
  std::size_t child;
  bool credit;
};

std::span<const BinderSlot> binder_slots(TermKind k) {
  static const BinderSlot lam[] = {{&TermNode::x, 0, false}};
  static const BinderSlot let_pair[] = {{&TermNode::x, 1, false}, {&TermNode::y, 1, false}};
  static const BinderSlot case_[] = {{&TermNode::x, 1, false}, {&TermNode::y, 2, false}};
  static const BinderSlot second[] = {{&TermNode::x, 1, false}};
  static const BinderSlot unpack[] = {{&TermNode::x, 1, true}, {&TermNode::y, 1, false}};
  switch (k) {
    case TermKind::Lam: return lam;
    case TermKind::LetPair: return let_pair;
    case TermKind::Case: return case_;
    case TermKind::Transfer:
    case TermKind::Let: return second;
    case TermKind::Unpack: return unpack;
    default: return {};
  }
}

bool binds_in(const TermNode& n, std::size_t child, const std::string& name, bool credit) {
  for (const auto& slot : binder_slots(n.kind))
    if (slot.child == child && slot.credit == credit && n.*(slot.field) == name) return true;
  return false;
}

Term rename_term_var(const Term& m, const std::string& from, const std::string& to) {
  return subst(m, from, tm::var(to));
}

void collect_names(const Term& m, std::set<std::string>& out) {
  if (!m) return;
  if (!m->x.empty()) out.insert(m->x);
  if (!m->y.empty()) out.insert(m->y);
  for (const auto& child : m->sub) collect_names(child, out);
}

}  // namespace

namespace tm {
Term var(std::string x) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Var;
  n->x = std::move(x);
  return n;
}
Term lam(std::string x, Type a, Term body) {
  auto n = std::make_shared<TermNode>();
  n->kind = TermKind::Lam;
  n->x = std::move(x);
  n->ty = std::move(a);
  n->sub = {std::move(body)};
  return n;
}
Term app(Term f, Term arg) { return make(TermKind::App, {std::move(f), std::move(arg)}); }
Term app(Term f, std::initializer_list<Term> args) {
  for (const auto& a : args) f = app(f, a);
  return f;
}
Term pair(Term a, Term b) { return make(TermKind::Pair, {std::move(a), std::move(b)}); }
Term let_pair(std::string x, std::string y, Term m, Term n, ExtNat k) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::LetPair;
  t->x = std::move(x);
  t->y = std::move(y);
  t->mult = k;
  t->sub = {std::move(m), std::move(n)};
  return t;
}
Term inl(Type other, Term m) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Inl;
  t->ty = std::move(other);
  t->sub = {std::move(m)};
  return t;
}
Term inr(Type other, Term m) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Inr;
  t->ty = std::move(other);
  t->sub = {std::move(m)};
  return t;
}
Term case_(Term m, std::string x, Term n1, std::string y, Term n2, ExtNat k) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Case;
  t->x = std::move(x);
  t->y = std::move(y);
  t->mult = k;
  t->sub = {std::move(m), std::move(n1), std::move(n2)};
  return t;
}
Term with(Term a, Term b) { return make(TermKind::With, {std::move(a), std::move(b)}); }
Term fst(Term m) { return make(TermKind::Fst, {std::move(m)}); }
Term snd(Term m) { return make(TermKind::Snd, {std::move(m)}); }
Term unit() {
  static const Term t = make(TermKind::Unit);
  return t;
}
Term zero() {
  static const Term t = make(TermKind::Zero);
  return t;
}
Term succ(Term m) { return make(TermKind::Succ, {std::move(m)}); }
Term numeral(std::uint64_t n) {
  Term t = zero();
  for (std::uint64_t i = 0; i < n; ++i) t = succ(t);
  return t;
}
Term nrec(Term m, Term base, Term step) {
  return make(TermKind::NRec, {std::move(m), std::move(base), std::move(step)});
}
Term nil(Type elem) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Nil;
  t->ty = std::move(elem);
  return t;
}
Term cons(Term h, Term tl) { return make(TermKind::Cons, {std::move(h), std::move(tl)}); }
Term list(Type elem, const std::vector<Term>& items) {
  Term t = nil(std::move(elem));
  for (std::size_t i = items.size(); i-- > 0;) t = cons(items[i], t);
  return t;
}
Term lrec(Term m, Term base, Term step) {
  return make(TermKind::LRec, {std::move(m), std::move(base), std::move(step)});
}
Term emp(Type elem) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Emp;
  t->ty = std::move(elem);
  return t;
}
Term node(Term elem, Term size, Term left, Term right) {
  return make(TermKind::Node, {std::move(elem), std::move(size), std::move(left), std::move(right)});
}
Term treerec(Term m, Term on_emp, Term on_left_emp, Term on_right_emp, Term on_both) {
  return make(TermKind::TreeRec, {std::move(m), std::move(on_emp), std::move(on_left_emp),
                                  std::move(on_right_emp), std::move(on_both)});
}
Term tick(Term m) { return make(TermKind::Tick, {std::move(m)}); }
Term create(CreditTerm c, Term m) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Create;
  t->credit = std::move(c);
  t->sub = {std::move(m)};
  return t;
}
Term spend(CreditTerm c, Term m) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Spend;
  t->credit = std::move(c);
  t->sub = {std::move(m)};
  return t;
}
Term save(ExtNat k, CreditTerm c, Term m) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Save;
  t->mult = k;
  t->credit = std::move(c);
  t->sub = {std::move(m)};
  return t;
}
Term transfer(std::string y, Term m, Term n, ExtNat k) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Transfer;
  t->x = std::move(y);
  t->mult = k;
  t->sub = {std::move(m), std::move(n)};
  return t;
}
Term pack(CreditTerm c, Type exists_type, Term m) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Pack;
  t->credit = std::move(c);
  t->ty = std::move(exists_type);
  t->sub = {std::move(m)};
  return t;
}
Term unpack(std::string alpha, std::string x, Term m, Term n) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Unpack;
  t->x = std::move(alpha);
  t->y = std::move(x);
  t->sub = {std::move(m), std::move(n)};
  return t;
}
Term let(std::string x, Term m, Term n) {
  auto t = std::make_shared<TermNode>();
  t->kind = TermKind::Let;
  t->x = std::move(x);
  t->sub = {std::move(m), std::move(n)};
  return t;
}
}  // namespace tm

bool is_value(const Term& m) {
  switch (m->kind) {
    case TermKind::Lam:
    case TermKind::Unit:
    case TermKind::Zero:
    case TermKind::Nil:
    case TermKind::Emp:
    case TermKind::With:
      return true;
    case TermKind::Pair:
    case TermKind::Cons:
    case TermKind::Node:
    case TermKind::Inl:
    case TermKind::Inr:
    case TermKind::Succ:
    case TermKind::Save:
    case TermKind::Pack: {
      signed char known = m->value.state.load(std::memory_order_relaxed);
      if (known) return known == 1;
      bool all = true;
      for (const auto& child : m->sub)
        if (!is_value(child)) {
          all = false;
          break;
        }
      m->value.state.store(all ? 1 : 2, std::memory_order_relaxed);
      return all;
    }
    default:
      return false;
  }
}

std::optional<std::uint64_t> numeral_value(const Term& m) {
  std::uint64_t n = 0;
  const TermNode* cur = m.get();
  while (cur->kind == TermKind::Succ) {
    ++n;
    cur = cur->sub[0].get();
  }
  if (cur->kind != TermKind::Zero) return std::nullopt;
  return n;
}

const std::set<std::string>& free_var_set(const Term& m) {
  std::call_once(m->fv.once, [&m] {
    auto& out = m->fv.vars;
    if (m->kind == TermKind::Var) {
      out.insert(m->x);
      return;
    }
    for (std::size_t i = 0; i < m->sub.size(); ++i)
      for (const auto& v : free_var_set(m->sub[i]))
        if (!binds_in(*m, i, v, false)) out.insert(v);
  });
  return m->fv.vars;
}

std::set<std::string> free_vars(const Term& m) { return free_var_set(m); }

bool occurs_free(const std::string& x, const Term& m) { return free_var_set(m).count(x) > 0; }

std::set<std::string> free_credit_vars(const Term& m) {
  std::call_once(m->fcv.once, [&m] {
    auto& out = m->fcv.vars;
    auto add = [&out](const std::set<std::string>& s) { out.insert(s.begin(), s.end()); };
    add(m->credit.free_vars());
    if (m->ty) add(free_credit_vars(m->ty));
    for (std::size_t i = 0; i < m->sub.size(); ++i) {
      for (const auto& v : free_credit_vars(m->sub[i]))
        if (!binds_in(*m, i, v, true)) out.insert(v);
    }
  });
  return m->fcv.vars;
}

namespace {

bool alpha_equal_env(const Term& a, const Term& b, NameEnv& terms, NameEnv& credits) {
  if (a->kind != b->kind || a->sub.size() != b->sub.size()) return false;
  if (a->kind == TermKind::Var) return canon_left(terms, a->x) == canon_right(terms, b->x);
  if (!(a->mult == b->mult)) return false;
  if (!credit_equal(a->credit, b->credit, credits)) return false;
  if (static_cast<bool>(a->ty) != static_cast<bool>(b->ty)) return false;
  if (a->ty && !type_equal_env(a->ty, b->ty, credits)) return false;
  const auto slots = binder_slots(a->kind);
  for (std::size_t i = 0; i < a->sub.size(); ++i) {
    std::size_t pushed_t = 0, pushed_c = 0;
    for (const auto& slot : slots) {
      if (slot.child != i) continue;
      if (slot.credit) {
        credits.emplace_back(a.get()->*(slot.field), b.get()->*(slot.field));
        ++pushed_c;
      } else {
        terms.emplace_back(a.get()->*(slot.field), b.get()->*(slot.field));
        ++pushed_t;
      }
    }
    bool eq = alpha_equal_env(a->sub[i], b->sub[i], terms, credits);
    terms.resize(terms.size() - pushed_t);
    credits.resize(credits.size() - pushed_c);
    if (!eq) return false;
  }
  return true;
}

Term subst_impl(const Term& n, const std::string& x, const Term& m, const std::set<std::string>& fv_m) {
  if (n->kind == TermKind::Var) return n->x == x ? m : n;
  if (n->sub.empty() || !occurs_free(x, n)) return n;
  auto copy = std::make_shared<TermNode>(*n);
  bool changed = false;
  for (std::size_t i = 0; i < n->sub.size(); ++i) {
    if (binds_in(*copy, i, x, false)) continue;
    Term child = copy->sub[i];
    if (!fv_m.empty()) {
      for (const auto& slot : binder_slots(n->kind)) {
        if (slot.child != i || slot.credit) continue;
        const std::string& b = copy.get()->*(slot.field);
        if (!fv_m.count(b)) continue;
        std::set<std::string> avoid = fv_m;
        collect_names(child, avoid);
        avoid.insert(x);
        std::string fresh = fresh_name(b, avoid);
        child = rename_term_var(child, b, fresh);
        copy.get()->*(slot.field) = fresh;
        changed = true;
      }
    }
    Term replaced = subst_impl(child, x, m, fv_m);
    if (replaced != n->sub[i]) changed = true;
    copy->sub[i] = replaced;
  }
  if (!changed) return n;
  return copy;
}

Term subst_credit_impl(const Term& m, const std::string& alpha, const CreditTerm& c,
                       const std::set<std::string>& fv_c) {
  if (!free_credit_vars(m).count(alpha)) return m;
  auto copy = std::make_shared<TermNode>(*m);
  copy->credit = m->credit.subst(alpha, c);
  if (m->ty) copy->ty = subst_credit(m->ty, alpha, c);
  for (std::size_t i = 0; i < m->sub.size(); ++i) {
    if (binds_in(*copy, i, alpha, true)) continue;
    Term child = m->sub[i];
    for (const auto& slot : binder_slots(m->kind)) {
      if (slot.child != i || !slot.credit) continue;
      const std::string& b = copy.get()->*(slot.field);
      if (!fv_c.count(b)) continue;
      std::set<std::string> avoid = fv_c;
      auto fc = free_credit_vars(child);
      avoid.insert(fc.begin(), fc.end());
      avoid.insert(alpha);
      std::string fresh = fresh_name(b, avoid);
      child = subst_credit_impl(child, b, CreditTerm::var(fresh), {fresh});
      copy.get()->*(slot.field) = fresh;
    }
    copy->sub[i] = subst_credit_impl(child, alpha, c, fv_c);
  }
  return copy;
}

}  // namespace

bool alpha_equal(const Term& a, const Term& b) {
  NameEnv terms, credits;
  return alpha_equal_env(a, b, terms, credits);
}

Term subst(const Term& n, const std::string& x, const Term& m) {
  return subst_impl(n, x, m, free_vars(m));
}

Term subst_credit(const Term& m, const std::string& alpha, const CreditTerm& c) {
  return subst_credit_impl(m, alpha, c, c.free_vars());
}

bool contains_tick(const Term& m) {
  if (m->kind == TermKind::Tick) return true;
  for (const auto& child : m->sub)
    if (contains_tick(child)) return true;
  return false;
}

std::size_t term_size(const Term& m) {
  std::size_t n = 1;
  for (const auto& child : m->sub) n += term_size(child);
  return n;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
  std::string stem = base;
  while (!stem.empty() && stem.back() >= '0' && stem.back() <= '9') stem.pop_back();
  if (!stem.empty() && stem.back() == '_') stem.pop_back();
  if (stem.empty()) stem = "v";
  if (!avoid.count(stem)) return stem;
  for (std::size_t i = 1;; ++i) {
    std::string cand = stem + "_" + std::to_string(i);
    if (!avoid.count(cand)) return cand;
  }
}

}  // namespace amort::la
