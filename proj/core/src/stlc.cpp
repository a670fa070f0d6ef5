#include "amort/stlc.hpp"

#include <sstream>

#include "amort/errors.hpp"
#include "amort/la_interp.hpp"

namespace amort::stlc {

Term make(Kind k, std::vector<Term> sub, std::string x, std::string y) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->sub = std::move(sub);
  n->x = std::move(x);
  n->y = std::move(y);
  return n;
}

Term var(std::string x) { return make(Kind::Var, {}, std::move(x)); }
Term unit() {
  static const Term t = make(Kind::Unit);
  return t;
}
Term lam(std::string x, Term body) { return make(Kind::Lam, {std::move(body)}, std::move(x)); }
Term app(Term f, Term a) { return make(Kind::App, {std::move(f), std::move(a)}); }
Term pair(Term a, Term b) { return make(Kind::Pair, {std::move(a), std::move(b)}); }

bool is_value(const Term& m) {
  switch (m->kind) {
    case Kind::Lam:
    case Kind::Unit:
    case Kind::Zero:
    case Kind::Nil:
    case Kind::Emp:
      return true;
    case Kind::Pair:
    case Kind::Inl:
    case Kind::Inr:
    case Kind::Succ:
    case Kind::Cons:
    case Kind::Node:
      for (const auto& c : m->sub)
        if (!is_value(c)) return false;
      return true;
    default:
      return false;
  }
}

namespace {

bool binds(const Node& n, std::size_t child, const std::string& x) {
  switch (n.kind) {
    case Kind::Lam: return child == 0 && n.x == x;
    case Kind::LetPair: return child == 1 && (n.x == x || n.y == x);
    case Kind::Case: return (child == 1 && n.x == x) || (child == 2 && n.y == x);
    case Kind::Let: return child == 1 && n.x == x;
    default: return false;
  }
}

}  // namespace

Term subst_closed(const Term& n, const std::string& x, const Term& v) {
  if (n->kind == Kind::Var) return n->x == x ? v : n;
  if (n->sub.empty()) return n;
  std::shared_ptr<Node> copy;
  for (std::size_t i = 0; i < n->sub.size(); ++i) {
    if (binds(*n, i, x)) continue;
    Term c = subst_closed(n->sub[i], x, v);
    if (c != n->sub[i]) {
      if (!copy) copy = std::make_shared<Node>(*n);
      copy->sub[i] = c;
    }
  }
  return copy ? Term(copy) : n;
}

std::size_t count_ticks_syntactic(const Term& m) {
  std::size_t n = m->kind == Kind::Tick ? 1 : 0;
  for (const auto& c : m->sub) n += count_ticks_syntactic(c);
  return n;
}

namespace {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Var: return "var";
    case Kind::Lam: return "lam";
    case Kind::App: return "app";
    case Kind::Pair: return "pair";
    case Kind::LetPair: return "let";
    case Kind::Inl: return "inl";
    case Kind::Inr: return "inr";
    case Kind::Case: return "case";
    case Kind::Unit: return "unit";
    case Kind::Zero: return "0";
    case Kind::Succ: return "succ";
    case Kind::NRec: return "nrec";
    case Kind::Nil: return "nil";
    case Kind::Cons: return "cons";
    case Kind::LRec: return "lrec";
    case Kind::Emp: return "emp";
    case Kind::Node: return "node";
    case Kind::TreeRec: return "treerec";
    case Kind::Tick: return "tick";
    case Kind::Let: return "let";
  }
  return "?";
}

void print(std::ostream& os, const Term& m) {
  switch (m->kind) {
    case Kind::Var: os << m->x; return;
    case Kind::Unit: os << "unit"; return;
    case Kind::Zero: os << "0"; return;
    case Kind::Nil: os << "nil"; return;
    case Kind::Emp: os << "emp"; return;
    case Kind::Succ: {
      std::size_t k = 0;
      const Node* cur = m.get();
      while (cur->kind == Kind::Succ) {
        ++k;
        cur = cur->sub[0].get();
      }
      if (cur->kind == Kind::Zero) {
        os << k;
        return;
      }
      break;
    }
    case Kind::Lam:
      os << "(lam " << m->x << " ";
      print(os, m->sub[0]);
      os << ")";
      return;
    case Kind::LetPair:
      os << "(let (" << m->x << " " << m->y << ") ";
      print(os, m->sub[0]);
      os << " ";
      print(os, m->sub[1]);
      os << ")";
      return;
    case Kind::Let:
      os << "(let " << m->x << " ";
      print(os, m->sub[0]);
      os << " ";
      print(os, m->sub[1]);
      os << ")";
      return;
    case Kind::Case:
      os << "(case ";
      print(os, m->sub[0]);
      os << " (" << m->x << " ";
      print(os, m->sub[1]);
      os << ") (" << m->y << " ";
      print(os, m->sub[2]);
      os << "))";
      return;
    case Kind::App:
      os << "(";
      print(os, m->sub[0]);
      os << " ";
      print(os, m->sub[1]);
      os << ")";
      return;
    default:
      break;
  }
  os << "(" << kind_name(m->kind);
  for (const auto& c : m->sub) {
    os << " ";
    print(os, c);
  }
  os << ")";
}

class Evaluator {
public:
  explicit Evaluator(std::uint64_t fuel) : fuel_(fuel) {}

  Term run(const Term& m);
  std::uint64_t ticks = 0;

private:
  [[noreturn]] void stuck(const Term& m, const char* why) {
    std::string s = show(m);
    if (s.size() > 120) s = s.substr(0, 117) + "...";
    throw StuckTerm(std::string(why) + ": " + s);
  }

  Term force_thunk(const Term& thunk) { return run(app(thunk, unit())); }

  Term node_view(const Term& t, const Term& base, const Term& le, const Term& re, const Term& both) {
    auto rec = [&](const Term& sub) {
      return lam("_", make(Kind::TreeRec, {sub, base, le, re, both}));
    };
    const Term& a = t->sub[2];
    const Term& b = t->sub[3];
    return pair(t->sub[0], pair(t->sub[1], pair(pair(lam("_", a), rec(a)), pair(lam("_", b), rec(b)))));
  }

  std::uint64_t fuel_;
};

Term Evaluator::run(const Term& m) {
  if (fuel_ == 0) throw FuelExhausted("evaluation step budget exhausted");
  --fuel_;
  switch (m->kind) {
    case Kind::Var:
      stuck(m, "free variable");
    case Kind::Lam:
    case Kind::Unit:
    case Kind::Zero:
    case Kind::Nil:
    case Kind::Emp:
      return m;
    case Kind::Pair:
    case Kind::Inl:
    case Kind::Inr:
    case Kind::Succ:
    case Kind::Cons:
    case Kind::Node: {
      if (is_value(m)) return m;
      std::vector<Term> vs;
      for (const auto& c : m->sub) vs.push_back(run(c));
      return make(m->kind, std::move(vs), m->x, m->y);
    }
    case Kind::App: {
      Term f = run(m->sub[0]);
      Term a = run(m->sub[1]);
      if (f->kind != Kind::Lam) stuck(m, "application of a non-function");
      return run(subst_closed(f->sub[0], f->x, a));
    }
    case Kind::LetPair: {
      Term p = run(m->sub[0]);
      if (p->kind != Kind::Pair) stuck(m, "pair elimination of a non-pair");
      Term body = subst_closed(m->sub[1], m->x, p->sub[0]);
      if (m->y != m->x) body = subst_closed(body, m->y, p->sub[1]);
      return run(body);
    }
    case Kind::Case: {
      Term s = run(m->sub[0]);
      if (s->kind == Kind::Inl) return run(subst_closed(m->sub[1], m->x, s->sub[0]));
      if (s->kind == Kind::Inr) return run(subst_closed(m->sub[2], m->y, s->sub[0]));
      stuck(m, "case of a non-injection");
    }
    case Kind::Let: {
      Term v = run(m->sub[0]);
      return run(subst_closed(m->sub[1], m->x, v));
    }
    case Kind::Tick:
      ++ticks;
      return run(m->sub[0]);
    case Kind::NRec: {
      Term n = run(m->sub[0]);
      Term base = run(m->sub[1]);
      Term step = run(m->sub[2]);
      if (n->kind == Kind::Zero) return run(app(base, unit()));
      if (n->kind != Kind::Succ) stuck(m, "nrec on a non-numeral");
      Term pred = n->sub[0];
      Term rec = lam("_", make(Kind::NRec, {pred, base, step}));
      return run(app(step, pair(pred, rec)));
    }
    case Kind::LRec: {
      Term l = run(m->sub[0]);
      Term base = run(m->sub[1]);
      Term step = run(m->sub[2]);
      if (l->kind == Kind::Nil) return run(app(base, unit()));
      if (l->kind != Kind::Cons) stuck(m, "lrec on a non-list");
      Term tail = l->sub[1];
      Term rec = lam("_", make(Kind::LRec, {tail, base, step}));
      return run(app(step, pair(l->sub[0], pair(lam("_", tail), rec))));
    }
    case Kind::TreeRec: {
      Term t = run(m->sub[0]);
      Term base = run(m->sub[1]);
      Term le = run(m->sub[2]);
      Term re = run(m->sub[3]);
      Term both = run(m->sub[4]);
      if (t->kind == Kind::Emp) return run(app(base, unit()));
      if (t->kind != Kind::Node) stuck(m, "treerec on a non-tree");
      const Term& l = t->sub[2];
      const Term& r = t->sub[3];
      if (l->kind == Kind::Emp) {
        Term right = r->kind == Kind::Emp ? make(Kind::Inl, {unit()})
                                          : make(Kind::Inr, {node_view(r, base, le, re, both)});
        return run(app(le, pair(t->sub[0], pair(t->sub[1], right))));
      }
      if (r->kind == Kind::Emp)
        return run(app(re, pair(t->sub[0], pair(t->sub[1], node_view(l, base, le, re, both)))));
      return run(app(both, pair(t->sub[0], pair(t->sub[1], pair(node_view(l, base, le, re, both),
                                                                    node_view(r, base, le, re, both))))));
    }
  }
  stuck(m, "unknown form");
}

}  // namespace

std::string show(const Term& m) {
  std::ostringstream os;
  print(os, m);
  return os.str();
}

StlcOutcome eval(const Term& m, std::uint64_t fuel) {
  Evaluator ev(fuel == 0 ? la::default_fuel() : fuel);
  Term v = ev.run(m);
  return {v, ev.ticks};
}

}  // namespace amort::stlc
