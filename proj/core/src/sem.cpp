#include "amort/sem.hpp"

#include <random>
#include <sstream>

#include "amort/errors.hpp"

namespace amort::sem {

namespace {

constexpr std::uint64_t kUnrollLimit = 10'000'000;

std::shared_ptr<SemVal> make(Tag t) {
  auto v = std::make_shared<SemVal>();
  v->tag = t;
  return v;
}

}  // namespace

Val unit() {
  static const Val u = make(Tag::Unit);
  return u;
}

Val nat(ExtNat n) {
  auto v = make(Tag::Nat);
  v->nat = n;
  return v;
}

Val cost(ExtInt c) {
  auto v = make(Tag::Cost);
  v->cost = c;
  return v;
}

Val pair(Val a, Val b) {
  auto v = make(Tag::Pair);
  v->a = std::move(a);
  v->b = std::move(b);
  return v;
}

Val sum_top() {
  static const Val t = make(Tag::Sum);
  return t;
}

Val inl(Val a) {
  if (is_top(a)) return sum_top();
  auto v = make(Tag::Sum);
  v->side = Side::Left;
  v->a = std::move(a);
  return v;
}

Val inr(Val a) {
  if (is_top(a)) return sum_top();
  auto v = make(Tag::Sum);
  v->side = Side::Right;
  v->a = std::move(a);
  return v;
}

Val fun(Fn f) {
  auto v = make(Tag::Fun);
  v->fn = std::move(f);
  return v;
}

Val top(const lc::Type& t) {
  switch (t->kind) {
    case lc::TypeKind::Unit:
      return unit();
    case lc::TypeKind::Nat:
    case lc::TypeKind::List:
    case lc::TypeKind::Credit:
      return nat(ExtNat::inf());
    case lc::TypeKind::Cost:
      return cost(ExtInt::inf());
    case lc::TypeKind::Prod:
      return pair(top(t->a), top(t->b));
    case lc::TypeKind::Sum:
      return sum_top();
    case lc::TypeKind::Arrow: {
      lc::Type result = t->b;
      auto v = make(Tag::Fun);
      v->fn = [result](const Val&) { return top(result); };
      v->top = true;
      return v;
    }
    case lc::TypeKind::Tree:
      throw Unsupported("trees have no interpretation in the size model");
  }
  throw Unsupported("unknown type");
}

bool is_top(const Val& v) {
  switch (v->tag) {
    case Tag::Unit: return true;
    case Tag::Nat: return v->nat.is_inf();
    case Tag::Cost: return v->cost.is_inf();
    case Tag::Pair: return is_top(v->a) && is_top(v->b);
    case Tag::Sum: return v->side == Side::Top;
    case Tag::Fun: return v->top;
  }
  return false;
}

Val join(const Val& a, const Val& b) {
  if (a->tag != b->tag) throw InvariantViolation("join of values of different shapes");
  switch (a->tag) {
    case Tag::Unit:
      return a;
    case Tag::Nat:
      return nat(max(a->nat, b->nat));
    case Tag::Cost:
      return cost(max(a->cost, b->cost));
    case Tag::Pair:
      return pair(join(a->a, b->a), join(a->b, b->b));
    case Tag::Sum:
      if (a->side == Side::Top || b->side == Side::Top || a->side != b->side) return sum_top();
      return a->side == Side::Left ? inl(join(a->a, b->a)) : inr(join(a->a, b->a));
    case Tag::Fun: {
      if (a->top) return a;
      if (b->top) return b;
      Fn f = a->fn, g = b->fn;
      return fun([f, g](const Val& x) { return join(f(x), g(x)); });
    }
  }
  throw InvariantViolation("join of an unknown value");
}

Val apply(const Val& f, const Val& arg) {
  if (f->tag != Tag::Fun) throw InvariantViolation("application of a non-function value");
  return f->fn(arg);
}

std::string show(const Val& v) {
  switch (v->tag) {
    case Tag::Unit: return "()";
    case Tag::Nat: return v->nat.to_string();
    case Tag::Cost: return v->cost.to_string();
    case Tag::Pair: return "(" + show(v->a) + ", " + show(v->b) + ")";
    case Tag::Sum:
      if (v->side == Side::Top) return "top";
      return (v->side == Side::Left ? "inl " : "inr ") + show(v->a);
    case Tag::Fun: return v->top ? "<top fn>" : "<fn>";
  }
  return "?";
}

Val scase(const Fn& on_left, const Fn& on_right, const lc::Type& left, const lc::Type& right, const Val& s) {
  switch (s->side) {
    case Side::Left: return join(on_left(s->a), on_right(top(right)));
    case Side::Right: return join(on_right(s->a), on_left(top(left)));
    case Side::Top: return join(on_left(top(left)), on_right(top(right)));
  }
  throw InvariantViolation("case on an unknown side");
}

namespace {

std::uint64_t unroll_count(const Val& n) {
  std::uint64_t count = n->nat.value();
  if (count > kUnrollLimit) throw Unsupported("recursion depth " + std::to_string(count) + " exceeds the unrolling limit");
  return count;
}

}  // namespace

Val snrec(const Fn& base, const Fn& step, const Val& n, const lc::Type& result) {
  if (n->nat.is_inf()) return top(result);
  std::uint64_t count = unroll_count(n);
  Val b = base(unit());
  Val acc = b;
  for (std::uint64_t i = 0; i < count; ++i) acc = join(b, step(pair(nat(i), acc)));
  return acc;
}

Val slrec(const Fn& base, const Fn& step, const Val& n, const lc::Type& elem, const lc::Type& result) {
  if (n->nat.is_inf()) return top(result);
  std::uint64_t count = unroll_count(n);
  Val head = top(elem);
  Val b = base(unit());
  Val acc = b;
  for (std::uint64_t i = 0; i < count; ++i) acc = join(b, step(pair(head, pair(nat(i), acc))));
  return acc;
}

namespace {

using Annotations = std::shared_ptr<const lc::TypeAnnotations>;

struct Frame;
using Scope = std::shared_ptr<const Frame>;

struct Frame {
  std::string name;
  Val value;
  Scope next;
};

Scope bind(Scope s, std::string name, Val v) {
  return std::make_shared<const Frame>(Frame{std::move(name), std::move(v), std::move(s)});
}

Scope scope_of(const Env& env) {
  Scope s;
  for (const auto& [name, v] : env) s = bind(s, name, v);
  return s;
}

struct Interp {
  Annotations types;

  lc::Type type_of(const lc::Term& e) const {
    auto it = types->find(e.get());
    if (it == types->end()) throw InvariantViolation("missing type annotation for " + lc::show(e));
    return it->second;
  }

  Val eval(const Scope& env, const lc::Term& e) const;

  Fn closure(const Scope& env, const lc::Term& body, const std::string& x) const {
    Interp self = *this;
    return [self, env, body, x](const Val& v) { return self.eval(bind(env, x, v), body); };
  }

  Fn value_fn(const Scope& env, const lc::Term& e) const {
    Val f = eval(env, e);
    return [f](const Val& v) { return sem::apply(f, v); };
  }
};

Val Interp::eval(const Scope& env, const lc::Term& e) const {
  using K = lc::Kind;
  switch (e->kind) {
    case K::Var: {
      for (const Frame* f = env.get(); f; f = f->next.get())
        if (f->name == e->x) return f->value;
      throw UnboundVariable("no value for '" + e->x + "'");
    }
    case K::Lam:
      return fun(closure(env, e->sub[0], e->x));
    case K::App:
      return sem::apply(eval(env, e->sub[0]), eval(env, e->sub[1]));
    case K::Pair:
      return pair(eval(env, e->sub[0]), eval(env, e->sub[1]));
    case K::Fst:
      return eval(env, e->sub[0])->a;
    case K::Snd:
      return eval(env, e->sub[0])->b;
    case K::Inl:
      return inl(eval(env, e->sub[0]));
    case K::Inr:
      return inr(eval(env, e->sub[0]));
    case K::Case: {
      lc::Type s = type_of(e->sub[0]);
      return scase(closure(env, e->sub[1], e->x), closure(env, e->sub[2], e->y), s->a, s->b, eval(env, e->sub[0]));
    }
    case K::Unit:
      return unit();
    case K::Zero:
    case K::Nil:
      return nat(0);
    case K::Succ:
      return nat(eval(env, e->sub[0])->nat + 1);
    case K::Cons:
      return nat(eval(env, e->sub[1])->nat + 1);
    case K::NRec:
      return snrec(value_fn(env, e->sub[1]), value_fn(env, e->sub[2]), eval(env, e->sub[0]), type_of(e));
    case K::LRec: {
      lc::Type l = type_of(e->sub[0]);
      return slrec(value_fn(env, e->sub[1]), value_fn(env, e->sub[2]), eval(env, e->sub[0]), l->a, type_of(e));
    }
    case K::Emp:
    case K::Node:
    case K::TreeRec:
      throw Unsupported("trees have no interpretation in the size model");
    case K::CostConst:
      return cost(e->cost);
    case K::CostAdd:
      return cost(eval(env, e->sub[0])->cost + eval(env, e->sub[1])->cost);
    case K::CostMax:
      return cost(max(eval(env, e->sub[0])->cost, eval(env, e->sub[1])->cost));
    case K::CostScale:
      return cost(scale(e->mult, eval(env, e->sub[0])->cost));
    case K::CostNeg:
      return cost(-eval(env, e->sub[0])->cost);
    case K::CreditConst:
      return nat(e->amount);
    case K::CreditAdd:
      return nat(eval(env, e->sub[0])->nat + eval(env, e->sub[1])->nat);
    case K::CreditScale:
      return nat(e->mult * eval(env, e->sub[0])->nat);
    case K::ToCost:
      return cost(ExtInt::from_nat(eval(env, e->sub[0])->nat));
  }
  throw InvariantViolation("unknown term form");
}

}  // namespace

Val eval(const lc::Context& ctx, const Env& env, const lc::Term& e) {
  auto types = std::make_shared<lc::TypeAnnotations>();
  lc::typecheck(ctx, e, types.get());
  Interp interp{types};
  return interp.eval(scope_of(env), e);
}

Val eval(const lc::Term& e) { return eval({}, {}, e); }

std::vector<Val> samples(const lc::Type& t) {
  switch (t->kind) {
    case lc::TypeKind::Unit:
      return {unit()};
    case lc::TypeKind::Nat:
    case lc::TypeKind::List:
    case lc::TypeKind::Credit:
      return {nat(0), nat(1), nat(2), nat(3), nat(7), nat(ExtNat::inf())};
    case lc::TypeKind::Cost:
      return {cost(0), cost(1), cost(2), cost(-1), cost(5), cost(ExtInt::inf())};
    case lc::TypeKind::Prod: {
      auto as = samples(t->a), bs = samples(t->b);
      std::vector<Val> out;
      std::size_t n = std::max(as.size(), bs.size());
      for (std::size_t i = 0; i < n; ++i) out.push_back(pair(as[std::min(i, as.size() - 1)], bs[std::min(i, bs.size() - 1)]));
      for (std::size_t i = 0; i + 1 < n; ++i)
        out.push_back(pair(as[std::min(n - 2 - i, as.size() - 1)], bs[std::min(i, bs.size() - 1)]));
      return out;
    }
    case lc::TypeKind::Sum: {
      std::vector<Val> out;
      for (const auto& a : samples(t->a))
        if (!is_top(a)) out.push_back(inl(a));
      for (const auto& b : samples(t->b))
        if (!is_top(b)) out.push_back(inr(b));
      out.push_back(sum_top());
      return out;
    }
    case lc::TypeKind::Arrow: {
      std::vector<Val> out;
      for (const auto& r : samples(t->b))
        if (!is_top(r)) out.push_back(fun([r](const Val&) { return r; }));
      out.push_back(top(t));
      return out;
    }
    case lc::TypeKind::Tree:
      throw Unsupported("trees have no interpretation in the size model");
  }
  throw Unsupported("unknown type");
}

bool leq(const Val& a, const Val& b, const lc::Type& t) {
  switch (t->kind) {
    case lc::TypeKind::Unit:
      return true;
    case lc::TypeKind::Nat:
    case lc::TypeKind::List:
    case lc::TypeKind::Credit:
      return a->nat <= b->nat;
    case lc::TypeKind::Cost:
      return a->cost <= b->cost;
    case lc::TypeKind::Prod:
      return leq(a->a, b->a, t->a) && leq(a->b, b->b, t->b);
    case lc::TypeKind::Sum:
      if (b->side == Side::Top) return true;
      if (a->side != b->side) return false;
      return leq(a->a, b->a, a->side == Side::Left ? t->a : t->b);
    case lc::TypeKind::Arrow:
      if (b->top) return true;
      for (const auto& x : samples(t->a))
        if (!leq(sem::apply(a, x), sem::apply(b, x), t->b)) return false;
      return true;
    case lc::TypeKind::Tree:
      throw Unsupported("trees have no interpretation in the size model");
  }
  return false;
}

Verdict check_leq_sampled(const lc::Context& ctx, const lc::Term& lhs, const lc::Term& rhs, std::size_t count,
                          std::uint64_t seed) {
  lc::Type t = lc::typecheck(ctx, lhs);
  lc::Type tr = lc::typecheck(ctx, rhs);
  if (!lc::type_equal(t, tr)) throw TypeMismatch("sides have types " + lc::show(t) + " and " + lc::show(tr));

  auto lt = std::make_shared<lc::TypeAnnotations>(), rt = std::make_shared<lc::TypeAnnotations>();
  lc::typecheck(ctx, lhs, lt.get());
  lc::typecheck(ctx, rhs, rt.get());
  Interp li{lt}, ri{rt};

  std::map<std::string, std::vector<Val>> pools;
  for (const auto& [x, ty] : ctx) pools[x] = samples(ty);

  std::mt19937_64 rng(seed);
  Verdict v;
  for (std::size_t i = 0; i < count; ++i) {
    Env env;
    for (const auto& [x, pool] : pools) {
      std::size_t pick;
      if (i == 0) pick = 0;
      else if (i == 1) pick = std::min<std::size_t>(1, pool.size() - 1);
      else if (i == 2) pick = pool.size() - 1;
      else pick = std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng);
      env[x] = pool[pick];
    }
    Scope scope = scope_of(env);
    Val a = li.eval(scope, lhs), b = ri.eval(scope, rhs);
    ++v.checked;
    if (!leq(a, b, t)) {
      std::ostringstream os;
      os << "at {";
      bool first = true;
      for (const auto& [x, val] : env) {
        os << (first ? "" : ", ") << x << " = " << show(val);
        first = false;
      }
      os << "}: " << show(a) << " is not below " << show(b);
      v.ok = false;
      v.counterexample = os.str();
      return v;
    }
    if (ctx.empty()) break;
  }
  return v;
}

Verdict check_monotone_sampled(const Val& f, const std::vector<std::pair<Val, Val>>& pairs, const lc::Type& result) {
  Verdict v;
  for (const auto& [x, y] : pairs) {
    Val fx = sem::apply(f, x), fy = sem::apply(f, y);
    ++v.checked;
    if (!leq(fx, fy, result)) {
      v.ok = false;
      v.counterexample = "f(" + show(x) + ") = " + show(fx) + " exceeds f(" + show(y) + ") = " + show(fy);
      return v;
    }
  }
  return v;
}

std::vector<std::pair<Val, Val>> nat_chain(std::uint64_t hi) {
  std::vector<std::pair<Val, Val>> out;
  for (std::uint64_t i = 0; i < hi; ++i) out.emplace_back(nat(i), nat(i + 1));
  out.emplace_back(nat(hi), nat(ExtNat::inf()));
  return out;
}

}  // namespace amort::sem
