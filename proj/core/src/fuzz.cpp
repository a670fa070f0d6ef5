#include "amort/fuzz.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "amort/bound.hpp"
#include "amort/errors.hpp"
#include "amort/extract.hpp"
#include "amort/la_interp.hpp"
#include "amort/la_typecheck.hpp"
#include "amort/stlc.hpp"

namespace amort::fuzz {

namespace {

namespace T = la::ty;
namespace M = la::tm;

la::Type token_type() { return T::exists("a", T::bang(1, CreditTerm::var("a"), T::unit())); }

}  // namespace

Generator::Generator(std::uint64_t seed, GenConfig cfg) : rng_(seed), cfg_(cfg) {}

std::uint64_t Generator::below(std::uint64_t n) { return n == 0 ? 0 : rng_() % n; }

bool Generator::chance(double p) { return static_cast<double>(rng_() % 1000000) < p * 1000000.0; }

std::string Generator::fresh(const char* stem) { return stem + std::to_string(++counter_); }

la::Type Generator::type(std::size_t depth) {
  std::uint64_t pick = below(depth == 0 ? 3 : 11);
  switch (pick) {
    case 0: return T::unit();
    case 1:
    case 2: return T::nat();
    case 3: return T::tensor(type(depth - 1), type(depth - 1));
    case 4: return T::plus(type(depth - 1), type(depth - 1));
    case 5: return T::with(type(depth - 1), type(depth - 1));
    case 6: return T::list(chance(0.5) ? T::nat() : T::unit());
    case 7: {
      static const ExtNat mults[] = {1, 2, ExtNat::inf()};
      return T::bang(mults[below(3)], CreditTerm(below(3)), chance(0.5) ? T::nat() : T::unit());
    }
    case 8: return T::lolli(type(0), type(depth - 1));
    case 9: return token_type();
    default: return T::nat();
  }
}

la::Term Generator::term(const la::Type& t) {
  Scope scope;
  return gen(t, cfg_.max_depth, scope);
}

la::Term Generator::value(const la::Type& t) { return gen_value(t, 2, false); }

la::Term Generator::gen_value(const la::Type& t, std::size_t depth, bool bankless) {
  using K = la::TypeKind;
  switch (t->kind) {
    case K::Unit: return M::unit();
    case K::Nat: return M::numeral(below(4));
    case K::Tensor: return M::pair(gen_value(t->a, depth, bankless), gen_value(t->b, depth, bankless));
    case K::Plus:
      return chance(0.5) ? M::inl(t->b, gen_value(t->a, depth, bankless))
                         : M::inr(t->a, gen_value(t->b, depth, bankless));
    case K::With: {
      if (depth == 0) return M::with(gen_value(t->a, 0, bankless), gen_value(t->b, 0, bankless));
      Scope s1, s2;
      s1.bankless = s2.bankless = bankless;
      return M::with(gen(t->a, depth - 1, s1), gen(t->b, depth - 1, s2));
    }
    case K::Lolli: {
      std::string x = fresh("x");
      Scope s;
      s.bankless = bankless;
      s.vars.push_back({x, t->a});
      return M::lam(x, t->a, depth == 0 ? gen_value(t->b, 0, bankless) : gen(t->b, depth - 1, s));
    }
    case K::List: {
      std::vector<la::Term> items;
      for (std::uint64_t i = below(4); i > 0; --i) items.push_back(gen_value(t->a, depth, bankless));
      return M::list(t->a, items);
    }
    case K::Tree: return M::emp(t->a);
    case K::Bang: return M::save(t->mult, t->credit, gen_value(t->a, depth, bankless));
    case K::Exists: {
      std::uint64_t c = bankless ? 0 : below(3);
      la::Type body = la::subst_credit(t->a, t->binder, CreditTerm(c));
      return M::pack(CreditTerm(c), t, gen_value(body, depth, bankless));
    }
  }
  return M::unit();
}

std::optional<la::Term> Generator::use_var(const la::Type& t, std::size_t depth, Scope& scope) {
  std::vector<std::size_t> candidates;
  for (std::size_t i = 0; i < scope.vars.size(); ++i) {
    const auto& v = scope.vars[i].type;
    if (la::type_equal(v, t) || (v->kind == la::TypeKind::Lolli && la::type_equal(v->b, t)) ||
        (v->kind == la::TypeKind::With && (la::type_equal(v->a, t) || la::type_equal(v->b, t))))
      candidates.push_back(i);
  }
  if (candidates.empty()) return std::nullopt;
  std::size_t i = candidates[below(candidates.size())];
  Var v = scope.vars[i];
  scope.vars.erase(scope.vars.begin() + static_cast<std::ptrdiff_t>(i));
  if (la::type_equal(v.type, t)) return M::var(v.name);
  if (v.type->kind == la::TypeKind::Lolli) {
    la::Term arg = gen(v.type->a, depth == 0 ? 0 : depth - 1, scope);
    return M::app(M::var(v.name), arg);
  }
  if (la::type_equal(v.type->a, t) && (!la::type_equal(v.type->b, t) || chance(0.5))) return M::fst(M::var(v.name));
  return M::snd(M::var(v.name));
}

la::Term Generator::wrap_effects(la::Term m, const la::Type& t, std::size_t depth, Scope& scope) {
  switch (below(3)) {
    case 0: return M::tick(m);
    case 1: return M::create(CreditTerm(below(3)), m);
    default:
      if (scope.bankless) return M::tick(m);
      return M::spend(CreditTerm(below(3)), m);
  }
}

la::Term Generator::gen(const la::Type& t, std::size_t depth, Scope& scope) {
  if (depth == 0 || chance(cfg_.leaf_bias)) {
    if (chance(0.5))
      if (auto v = use_var(t, 0, scope)) return *v;
    return gen_value(t, 0, scope.bankless);
  }
  const std::size_t d = depth - 1;
  auto additive = [&](const std::function<la::Term(Scope&)>& left, const std::function<la::Term(Scope&)>& right,
                      const std::function<la::Term(la::Term, la::Term)>& join) {
    Scope a = scope, b = scope;
    la::Term l = left(a), r = right(b);
    std::vector<Var> kept;
    for (const auto& v : scope.vars) {
      auto has = [&v](const Scope& s) {
        return std::any_of(s.vars.begin(), s.vars.end(), [&v](const Var& w) { return w.name == v.name; });
      };
      if (has(a) && has(b)) kept.push_back(v);
    }
    scope.vars = kept;
    return join(l, r);
  };

  switch (below(14)) {
    case 0:
      if (auto v = use_var(t, d, scope)) return *v;
      return gen_value(t, d, scope.bankless);
    case 1: {
      using K = la::TypeKind;
      switch (t->kind) {
        case K::Tensor: {
          la::Term a = gen(t->a, d, scope);
          return M::pair(a, gen(t->b, d, scope));
        }
        case K::Plus:
          return chance(0.5) ? M::inl(t->b, gen(t->a, d, scope)) : M::inr(t->a, gen(t->b, d, scope));
        case K::With:
          return additive([&](Scope& s) { return gen(t->a, d, s); }, [&](Scope& s) { return gen(t->b, d, s); },
                          [](la::Term a, la::Term b) { return M::with(a, b); });
        case K::Lolli: {
          std::string x = fresh("x");
          Scope inner = scope;
          inner.vars.push_back({x, t->a});
          la::Term body = gen(t->b, d, inner);
          scope.vars.erase(std::remove_if(scope.vars.begin(), scope.vars.end(),
                                          [&inner](const Var& v) {
                                            return std::none_of(inner.vars.begin(), inner.vars.end(),
                                                                [&v](const Var& w) { return w.name == v.name; });
                                          }),
                           scope.vars.end());
          return M::lam(x, t->a, body);
        }
        case K::List:
          if (chance(0.5)) {
            la::Term h = gen(t->a, d, scope);
            return M::cons(h, gen(t, d, scope));
          }
          return M::nil(t->a);
        case K::Bang:
          if (t->mult.is_inf()) return M::save(t->mult, t->credit, gen_value(t->a, d, scope.bankless));
          if (scope.bankless && !t->credit.is_zero())
            return M::create(t->credit, M::save(t->mult, t->credit, gen(t->a, d, scope)));
          return M::save(t->mult, t->credit, gen(t->a, d, scope));
        case K::Exists: {
          std::uint64_t c = below(3);
          la::Term inner = M::pack(CreditTerm(c), t, M::save(1, CreditTerm(c), M::unit()));
          return scope.bankless && c > 0 ? M::create(CreditTerm(c), inner) : inner;
        }
        default:
          return wrap_effects(gen(t, d, scope), t, d, scope);
      }
    }
    case 2:
    case 3:
      return wrap_effects(gen(t, d, scope), t, d, scope);
    case 4: {
      la::Type a = type(1);
      la::Term bound = gen(a, d, scope);
      std::string x = fresh("x");
      scope.vars.push_back({x, a});
      return M::let(x, bound, gen(t, d, scope));
    }
    case 5: {
      la::Type a = type(1);
      std::string x = fresh("x");
      Scope inner = scope;
      inner.vars.push_back({x, a});
      la::Term body = gen(t, d, inner);
      scope.vars = inner.vars;
      scope.vars.erase(std::remove_if(scope.vars.begin(), scope.vars.end(), [&x](const Var& v) { return v.name == x; }),
                       scope.vars.end());
      return M::app(M::lam(x, a, body), gen(a, d, scope));
    }
    case 6: {
      la::Type a = type(1), b = type(1);
      la::Term p = gen(T::tensor(a, b), d, scope);
      std::string x = fresh("x"), y = fresh("y");
      scope.vars.push_back({x, a});
      scope.vars.push_back({y, b});
      return M::let_pair(x, y, p, gen(t, d, scope));
    }
    case 7: {
      la::Type a = type(1), b = type(1);
      la::Term s = gen(T::plus(a, b), d, scope);
      std::string x = fresh("x"), y = fresh("y");
      return additive(
          [&](Scope& sc) {
            sc.vars.push_back({x, a});
            return gen(t, d, sc);
          },
          [&](Scope& sc) {
            sc.vars.push_back({y, b});
            return gen(t, d, sc);
          },
          [&](la::Term l, la::Term r) { return M::case_(s, x, l, y, r); });
    }
    case 8: {
      la::Type other = type(1);
      if (chance(0.5)) return M::fst(gen(T::with(t, other), d, scope));
      return M::snd(gen(T::with(other, t), d, scope));
    }
    case 9: {
      Scope base;
      base.bankless = true;
      la::Term b = gen(t, d, base);
      Scope step;
      step.bankless = true;
      std::string m = fresh("m"), r = fresh("r"), q = fresh("q"), u = fresh("u");
      la::Type rec = T::lolli(T::unit(), t);
      step.vars.push_back({m, T::nat()});
      step.vars.push_back({r, rec});
      la::Term body = gen(t, d, step);
      return M::nrec(M::numeral(below(4)), M::lam(u, T::unit(), b),
                     M::save(ExtNat::inf(), CreditTerm(0),
                             M::lam(q, T::tensor(T::nat(), rec), M::let_pair(m, r, M::var(q), body))));
    }
    case 10: {
      la::Type elem = chance(0.5) ? T::nat() : T::unit();
      Scope base;
      base.bankless = true;
      la::Term b = gen(t, d, base);
      Scope step;
      step.bankless = true;
      std::string h = fresh("h"), rest = fresh("t"), p = fresh("p"), u = fresh("u");
      la::Type tail = T::with(T::list(elem), t);
      step.vars.push_back({h, elem});
      step.vars.push_back({rest, tail});
      la::Term body = gen(t, d, step);
      return M::lrec(gen_value(T::list(elem), 0, true), M::lam(u, T::unit(), b),
                     M::save(ExtNat::inf(), CreditTerm(0),
                             M::lam(p, T::tensor(elem, tail), M::let_pair(h, rest, M::var(p), body))));
    }
    case 11: {
      static const ExtNat mults[] = {1, 2, ExtNat::inf()};
      la::Type inner = chance(0.5) ? T::nat() : T::unit();
      la::Type bang = T::bang(mults[below(3)], CreditTerm(scope.bankless ? 0 : below(3)), inner);
      la::Term m = gen(bang, d, scope);
      std::string y = fresh("y");
      scope.vars.push_back({y, inner});
      return M::transfer(y, m, gen(t, d, scope));
    }
    case 12: {
      la::Term tok = gen(token_type(), d, scope);
      std::string a = fresh("a"), x = fresh("x"), u = fresh("u");
      la::Term body = gen(t, d, scope);
      if (chance(0.5)) body = M::spend(CreditTerm::var(a), body);
      return M::unpack(a, x, tok, M::transfer(u, M::var(x), body));
    }
    default:
      return gen_value(t, d, scope.bankless);
  }
}

// ---- properties ----

std::vector<std::pair<std::string, std::string>> check_program(const la::Term& m, bool ignore_spend) {
  std::vector<std::pair<std::string, std::string>> out;
  la::CheckOptions copts;
  copts.ignore_spend = ignore_spend;
  auto typed = la::synthesize({}, m, copts);
  const CreditTerm& bank = typed.resources.bank();
  if (!bank.is_closed() || bank.constant().is_inf()) return out;
  std::int64_t a = static_cast<std::int64_t>(bank.constant().value());

  la::EvalOutcome run;
  try {
    run = la::eval(m);
  } catch (const InfiniteCreditOverflow&) {
    return out;
  } catch (const Error& e) {
    out.emplace_back("progress", e.what());
    return out;
  }
  const std::int64_t r = run.cost.r;

  if (a + r < 0) {
    out.emplace_back("preservation", "a + r = " + std::to_string(a + r));
  } else {
    try {
      la::check({}, ResourceTerm::credits(CreditTerm(static_cast<std::uint64_t>(a + r))), run.value, typed.type);
    } catch (const Error& e) {
      out.emplace_back("preservation", std::string("value does not check at a + r: ") + e.what());
    }
  }

  auto again = la::eval(run.value);
  if (again.value != run.value && !la::alpha_equal(again.value, run.value))
    out.emplace_back("value-cost", "value is not a normal form");
  if (again.cost.n != 0 || again.cost.r != 0)
    out.emplace_back("value-cost", "value costs (" + std::to_string(again.cost.n) + "," +
                                       std::to_string(again.cost.r) + ")");
  if (la::is_value(m) && (run.cost.n != 0 || run.cost.r != 0)) out.emplace_back("value-cost", "source value has cost");

  try {
    auto erased = stlc::eval(la::erase(m));
    if (erased.ticks != run.cost.n)
      out.emplace_back("erasure", std::to_string(erased.ticks) + " ticks after erasure, " +
                                      std::to_string(run.cost.n) + " before");
  } catch (const Error& e) {
    out.emplace_back("erasure", e.what());
  }

  try {
    auto real = la::synthesize({}, m);
    Complexity c = extract(real.derivation);
    lc::Type got = lc::typecheck({}, c.term);
    if (!lc::type_equal(got, complexity_type(real.type)))
      out.emplace_back("extraction-type", lc::show(got) + " vs " + lc::show(complexity_type(real.type)));
  } catch (const Error& e) {
    out.emplace_back("extraction-type", e.what());
  }

  try {
    auto e = check_bound(m, bank);
    if (!e.ok) out.emplace_back("bound", e.detail);
  } catch (const Error& e) {
    out.emplace_back("bound", e.what());
  }
  return out;
}

namespace {

bool violates(const la::Term& m, const std::string& property, bool ignore_spend) {
  try {
    la::CheckOptions copts;
    copts.ignore_spend = ignore_spend;
    la::synthesize({}, m, copts);
    for (const auto& [p, _] : check_program(m, ignore_spend))
      if (p == property) return true;
  } catch (const Error&) {
  }
  return false;
}

std::size_t count_nodes(const la::Term& m) {
  std::size_t n = 1;
  for (const auto& c : m->sub) n += count_nodes(c);
  return n;
}

// Replaces the node with preorder index `target` by `with`.
la::Term replace_at(const la::Term& m, std::size_t& index, std::size_t target, const la::Term& with) {
  if (index == target) {
    ++index;
    return with;
  }
  ++index;
  if (m->sub.empty()) return m;
  auto copy = std::make_shared<la::TermNode>(*m);
  for (auto& c : copy->sub) c = replace_at(c, index, target, with);
  return copy;
}

const la::Term* node_at(const la::Term& m, std::size_t& index, std::size_t target) {
  if (index++ == target) return &m;
  for (const auto& c : m->sub)
    if (auto found = node_at(c, index, target)) return found;
  return nullptr;
}

}  // namespace

la::Term shrink(const la::Term& m, const std::string& property, bool ignore_spend) {
  la::Term best = m;
  bool progress = true;
  for (std::size_t round = 0; progress && round < 64; ++round) {
    progress = false;
    std::size_t total = count_nodes(best);
    for (std::size_t pos = 0; pos < total && !progress; ++pos) {
      std::size_t idx = 0;
      const la::Term* at = node_at(best, idx, pos);
      if (!at) break;
      for (const auto& child : (*at)->sub) {
        std::size_t j = 0;
        la::Term candidate = replace_at(best, j, pos, child);
        if (count_nodes(candidate) < total && violates(candidate, property, ignore_spend)) {
          best = candidate;
          progress = true;
          break;
        }
      }
    }
  }
  return best;
}

std::string FuzzReport::summary() const {
  std::ostringstream out;
  out << "generated " << generated << ", rejected " << rejected << ", checked " << checked << " (" << values
      << " values), violations " << violations.size() << "\n";
  for (const auto& [p, n] : violations_by_property) out << "  " << p << ": " << n << "\n";
  for (std::size_t i = 0; i < violations.size() && i < 5; ++i)
    out << "  witness [" << violations[i].property << "] " << la::show(violations[i].term) << " -- "
        << violations[i].detail << "\n";
  return out.str();
}

FuzzReport run(const FuzzConfig& cfg) {
  FuzzReport report;
  Generator gen(cfg.seed, cfg.gen);
  la::CheckOptions copts;
  copts.ignore_spend = cfg.ignore_spend;
  while (report.checked < cfg.count && report.generated < cfg.count * 20) {
    ++report.generated;
    la::Type t = gen.type(2);
    la::Term m = gen.term(t);
    try {
      auto typed = la::synthesize({}, m, copts);
      const CreditTerm& bank = typed.resources.bank();
      if (!bank.is_closed() || bank.constant().is_inf()) {
        ++report.rejected;
        continue;
      }
    } catch (const Error&) {
      ++report.rejected;
      continue;
    }
    ++report.checked;
    if (la::is_value(m)) ++report.values;
    for (const auto& [property, detail] : check_program(m, cfg.ignore_spend)) {
      ++report.violations_by_property[property];
      la::Term witness = cfg.shrink && report.violations.size() < 5 ? shrink(m, property, cfg.ignore_spend) : m;
      report.violations.push_back({property, witness, detail});
    }
  }
  return report;
}

// ---- certificate instances ----

namespace {

namespace C = lc::tm;
namespace CT = lc::ty;

class CostGen {
public:
  explicit CostGen(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t below(std::uint64_t n) { return rng_() % n; }

  lc::Term constant() {
    if (below(12) == 0) return C::cost(ExtInt::inf());
    return C::cost(static_cast<std::int64_t>(below(8)) - 2);
  }

  // A term of type C over c, d : C, n : nat, k : $, plus `extra`.
  lc::Term cost(std::size_t depth, bool closed, const std::vector<std::string>& extra = {}) {
    if (depth == 0 || below(3) == 0) {
      std::uint64_t pick = below(closed ? 2 : 5 + extra.size());
      if (pick == 0 || closed) return pick == 1 ? C::to_cost(C::credit(below(4))) : constant();
      if (pick == 1) return C::var("c");
      if (pick == 2) return C::var("d");
      if (pick == 3) return C::to_cost(C::var("k"));
      if (pick == 4) return C::to_cost(C::credit(below(4)));
      return C::var(extra[pick - 5]);
    }
    static const ExtNat scales[] = {0, 1, 2, ExtNat::inf()};
    switch (below(closed ? 3 : 5)) {
      case 0: return C::add(cost(depth - 1, closed, extra), cost(depth - 1, closed, extra));
      case 1: return C::max(cost(depth - 1, closed, extra), cost(depth - 1, closed, extra));
      case 2: return C::scale(scales[below(4)], cost(depth - 1, closed, extra));
      case 3: {
        std::string q = "q" + std::to_string(++counter_);
        auto step_extra = extra;
        lc::Term step = C::add(C::snd(C::var(q)), cost(depth - 1, false, extra));
        return C::nrec(C::var("n"), C::lam("u" + std::to_string(counter_), CT::unit(), cost(depth - 1, false, extra)),
                       C::lam(q, CT::prod(CT::nat(), CT::cost()), step));
      }
      default: {
        std::string x = "x" + std::to_string(++counter_);
        auto inner = extra;
        inner.push_back(x);
        return C::app(C::lam(x, CT::cost(), cost(depth - 1, false, inner)), cost(depth - 1, false, extra));
      }
    }
  }

  // A redex of type C and its certified reduct.
  std::pair<lc::Term, lc::CertPtr> redex(std::size_t depth) {
    lc::Term r;
    switch (below(4)) {
      case 0: {
        std::string x = "x" + std::to_string(++counter_);
        r = C::app(C::lam(x, CT::cost(), cost(depth, false, {x})), cost(depth, false));
        break;
      }
      case 1: r = C::fst(C::pair(cost(depth, false), cost(depth, false))); break;
      case 2: r = C::snd(C::pair(C::unit(), cost(depth, false))); break;
      default: {
        std::string q = "q" + std::to_string(++counter_);
        r = C::nrec(C::numeral(below(3)), C::lam("u" + std::to_string(counter_), CT::unit(), cost(depth, false)),
                    C::lam(q, CT::prod(CT::nat(), CT::cost()), C::add(C::snd(C::var(q)), cost(depth, false))));
        break;
      }
    }
    return {r, lc::cert::beta(r)};
  }

private:
  std::mt19937_64 rng_;
  std::size_t counter_ = 0;
};

}  // namespace

std::vector<CertInstance> certificate_instances(std::size_t count, std::uint64_t seed) {
  CostGen g(seed);
  lc::Context ctx = {{"c", CT::cost()}, {"d", CT::cost()}, {"n", CT::nat()}, {"k", CT::credit()}};
  std::vector<CertInstance> out;
  while (out.size() < count) {
    CertInstance inst;
    inst.ctx = ctx;
    inst.type = CT::cost();
    switch (out.size() % 6) {
      case 0: {
        auto [r, c] = g.redex(2);
        inst.kind = "beta";
        inst.rhs = r;
        inst.lhs = c->lhs;
        inst.cert = c;
        break;
      }
      case 1: {
        auto [r, c] = g.redex(2);
        lc::Term other = g.cost(2, false);
        inst.kind = "congruence";
        switch (g.below(3)) {
          case 0:
            inst.lhs = C::add(c->lhs, other);
            inst.rhs = C::add(r, other);
            inst.cert = lc::cert::cong(inst.lhs, inst.rhs, {c, nullptr});
            break;
          case 1:
            inst.lhs = C::max(other, c->lhs);
            inst.rhs = C::max(other, r);
            inst.cert = lc::cert::cong(inst.lhs, inst.rhs, {nullptr, c});
            break;
          default: {
            lc::Term pl = C::pair(c->lhs, other), pr = C::pair(r, other);
            auto inner = lc::cert::cong(pl, pr, {c, nullptr});
            inst.lhs = C::fst(pl);
            inst.rhs = C::fst(pr);
            inst.cert = lc::cert::cong(inst.lhs, inst.rhs, {inner});
            break;
          }
        }
        break;
      }
      case 2: {
        lc::Term a = g.cost(3, true), b = g.cost(3, true);
        if (lc::normalize_cost(b) < lc::normalize_cost(a)) std::swap(a, b);
        inst.kind = "arithmetic";
        inst.lhs = a;
        inst.rhs = b;
        inst.cert = lc::cert::arith(a, b);
        break;
      }
      case 3: {
        lc::Term a = g.cost(2, false), b = g.cost(2, false);
        inst.kind = "max";
        if (g.below(2)) {
          inst.lhs = a;
          inst.rhs = C::max(a, b);
          inst.cert = lc::cert::max_left(a, b);
        } else {
          inst.lhs = b;
          inst.rhs = C::max(a, b);
          inst.cert = lc::cert::max_right(a, b);
        }
        break;
      }
      case 4: {
        auto [r, c] = g.redex(2);
        lc::Term other = g.cost(2, false);
        inst.kind = "transitivity";
        inst.lhs = c->lhs;
        inst.rhs = C::max(r, other);
        inst.cert = lc::cert::trans(c, lc::cert::max_left(r, other));
        break;
      }
      default: {
        lc::Term a = g.cost(2, false);
        inst.kind = "top";
        inst.lhs = a;
        inst.rhs = C::cost(ExtInt::inf());
        inst.cert = lc::cert::top(a);
        break;
      }
    }
    out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace amort::fuzz
