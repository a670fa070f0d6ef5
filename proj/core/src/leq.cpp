#include "amort/leq.hpp"

#include <algorithm>

#include "amort/errors.hpp"

namespace amort::lc {

const char* rule_name(LeqRule r) {
  switch (r) {
    case LeqRule::Refl: return "refl";
    case LeqRule::Trans: return "trans";
    case LeqRule::Beta: return "beta";
    case LeqRule::Cong: return "cong";
    case LeqRule::Arith: return "arith";
    case LeqRule::MaxLeft: return "max-left";
    case LeqRule::MaxRight: return "max-right";
    case LeqRule::MaxLub: return "max-lub";
    case LeqRule::Top: return "top";
  }
  return "?";
}

namespace {

CertPtr make_cert(LeqRule rule, Term lhs, Term rhs, std::vector<CertPtr> premises = {}) {
  return std::make_shared<LeqCert>(LeqCert{rule, std::move(lhs), std::move(rhs), std::move(premises)});
}

Term with_children(const Term& e, std::vector<Term> sub) {
  auto copy = std::make_shared<Node>(*e);
  copy->sub = std::move(sub);
  return copy;
}

bool same_head(const Term& a, const Term& b) {
  if (a->kind != b->kind || a->sub.size() != b->sub.size()) return false;
  if (a->x != b->x || a->y != b->y) return false;
  if (!(a->cost == b->cost) || !(a->amount == b->amount) || !(a->mult == b->mult)) return false;
  if (static_cast<bool>(a->ty) != static_cast<bool>(b->ty)) return false;
  return !a->ty || type_equal(a->ty, b->ty);
}

bool is_arith(Kind k) {
  switch (k) {
    case Kind::CostAdd:
    case Kind::CostMax:
    case Kind::CostScale:
    case Kind::CostNeg:
    case Kind::ToCost:
    case Kind::CreditAdd:
    case Kind::CreditScale:
      return true;
    default:
      return false;
  }
}

bool is_constant(const Term& e) { return e->kind == Kind::CostConst || e->kind == Kind::CreditConst; }

// The node view handed to a treerec branch for a non-empty subtree.
Term view(const Term& tree, const Term& base, const Term& le, const Term& re, const Term& both) {
  auto child = [&](const Term& sub) { return tm::pair(sub, tm::treerec(sub, base, le, re, both)); };
  return tm::pair(tree->sub[0], tm::pair(tree->sub[1], tm::pair(child(tree->sub[2]), child(tree->sub[3]))));
}

std::optional<Term> tree_step(const Term& e) {
  const Term& t = e->sub[0];
  const Term &base = e->sub[1], &le = e->sub[2], &re = e->sub[3], &both = e->sub[4];
  if (t->kind == Kind::Emp) return tm::app(base, tm::unit());
  if (t->kind != Kind::Node) return std::nullopt;
  const Term &l = t->sub[2], &r = t->sub[3];
  auto literal = [](const Term& s) { return s->kind == Kind::Emp || s->kind == Kind::Node; };
  if (!literal(l) || !literal(r)) return std::nullopt;
  auto with_head = [&](const Term& rest) { return tm::pair(t->sub[0], tm::pair(t->sub[1], rest)); };
  if (l->kind == Kind::Emp) {
    // The injection needs the view type, read off the branch's binder.
    if (le->kind != Kind::Lam || !le->ty || le->ty->kind != TypeKind::Prod || !le->ty->b ||
        le->ty->b->kind != TypeKind::Prod || le->ty->b->b->kind != TypeKind::Sum)
      return std::nullopt;
    Type sum = le->ty->b->b;
    Term right = r->kind == Kind::Emp ? tm::inl(sum->b, tm::unit()) : tm::inr(sum->a, view(r, base, le, re, both));
    return tm::app(le, with_head(right));
  }
  if (r->kind == Kind::Emp) return tm::app(re, with_head(view(l, base, le, re, both)));
  return tm::app(both, with_head(tm::pair(view(l, base, le, re, both), view(r, base, le, re, both))));
}

}  // namespace

std::optional<Term> beta_step(const Term& e) {
  switch (e->kind) {
    case Kind::App: {
      const Term& f = e->sub[0];
      if (f->kind == Kind::Lam) return subst(f->sub[0], f->x, e->sub[1]);
      return std::nullopt;
    }
    case Kind::Fst:
    case Kind::Snd: {
      const Term& p = e->sub[0];
      if (p->kind != Kind::Pair) return std::nullopt;
      return p->sub[e->kind == Kind::Fst ? 0 : 1];
    }
    case Kind::Case: {
      const Term& s = e->sub[0];
      if (s->kind == Kind::Inl) return subst(e->sub[1], e->x, s->sub[0]);
      if (s->kind == Kind::Inr) return subst(e->sub[2], e->y, s->sub[0]);
      return std::nullopt;
    }
    case Kind::NRec: {
      const Term& n = e->sub[0];
      if (n->kind == Kind::Zero) return tm::app(e->sub[1], tm::unit());
      if (n->kind == Kind::Succ)
        return tm::app(e->sub[2], tm::pair(n->sub[0], tm::nrec(n->sub[0], e->sub[1], e->sub[2])));
      return std::nullopt;
    }
    case Kind::LRec: {
      const Term& l = e->sub[0];
      if (l->kind == Kind::Nil) return tm::app(e->sub[1], tm::unit());
      if (l->kind == Kind::Cons)
        return tm::app(e->sub[2], tm::pair(l->sub[0], tm::pair(l->sub[1], tm::lrec(l->sub[1], e->sub[1], e->sub[2]))));
      return std::nullopt;
    }
    case Kind::TreeRec:
      return tree_step(e);
    default:
      return std::nullopt;
  }
}

bool congruence_position(Kind k, std::size_t i) {
  switch (k) {
    case Kind::Lam:
    case Kind::Pair:
    case Kind::Inl:
    case Kind::Inr:
    case Kind::Succ:
    case Kind::Cons:
    case Kind::Node:
    case Kind::CostAdd:
    case Kind::CostMax:
    case Kind::CostScale:
    case Kind::ToCost:
    case Kind::CreditAdd:
    case Kind::CreditScale:
      return true;
    case Kind::App:
    case Kind::Fst:
    case Kind::Snd:
    case Kind::Case:
    case Kind::NRec:
    case Kind::LRec:
    case Kind::TreeRec:
      return i == 0;
    default:
      return false;
  }
}

namespace cert {

CertPtr refl(const Term& e) { return make_cert(LeqRule::Refl, e, e); }

CertPtr trans(const CertPtr& a, const CertPtr& b) { return make_cert(LeqRule::Trans, a->lhs, b->rhs, {a, b}); }

CertPtr beta(const Term& redex) {
  auto reduct = beta_step(redex);
  if (!reduct) throw MalformedCertificate("no redex at the root of " + show(redex));
  return make_cert(LeqRule::Beta, *reduct, redex);
}

CertPtr cong(const Term& lhs, const Term& rhs, std::vector<CertPtr> premises) {
  return make_cert(LeqRule::Cong, lhs, rhs, std::move(premises));
}

CertPtr arith(const Term& lhs, const Term& rhs) { return make_cert(LeqRule::Arith, lhs, rhs); }

CertPtr max_left(const Term& lhs, const Term& other) { return make_cert(LeqRule::MaxLeft, lhs, tm::max(lhs, other)); }

CertPtr max_right(const Term& other, const Term& rhs) {
  return make_cert(LeqRule::MaxRight, rhs, tm::max(other, rhs));
}

CertPtr max_lub(const CertPtr& a, const CertPtr& b) {
  return make_cert(LeqRule::MaxLub, tm::max(a->lhs, b->lhs), a->rhs, {a, b});
}

CertPtr top(const Term& lhs) { return make_cert(LeqRule::Top, lhs, tm::cost(ExtInt::inf())); }

}  // namespace cert

namespace {

class CertChecker {
public:
  void check(const CertPtr& c, const Context& ctx) {
    if (!c) throw MalformedCertificate("missing certificate node");
    switch (c->rule) {
      case LeqRule::Refl:
        require(c, alpha_equal(c->lhs, c->rhs), "sides differ");
        return;
      case LeqRule::Trans:
        require(c, c->premises.size() == 2 && c->premises[0] && c->premises[1], "needs two premises");
        require(c, alpha_equal(c->premises[0]->lhs, c->lhs), "left premise does not start at lhs");
        require(c, alpha_equal(c->premises[1]->rhs, c->rhs), "right premise does not end at rhs");
        require(c, alpha_equal(c->premises[0]->rhs, c->premises[1]->lhs), "premises do not meet");
        check(c->premises[0], ctx);
        check(c->premises[1], ctx);
        return;
      case LeqRule::Beta: {
        auto reduct = beta_step(c->rhs);
        require(c, reduct.has_value(), "rhs is not a redex");
        require(c, alpha_equal(*reduct, c->lhs), "lhs is not the reduct of rhs");
        return;
      }
      case LeqRule::Cong:
        check_cong(c, ctx);
        return;
      case LeqRule::Arith: {
        require(c, free_vars(c->lhs).empty() && free_vars(c->rhs).empty(), "arithmetic sides must be closed");
        Type tl = typecheck({}, c->lhs), tr = typecheck({}, c->rhs);
        require(c, type_equal(tl, tr), "sides have different types");
        require(c, tl->kind == TypeKind::Cost || tl->kind == TypeKind::Credit, "arithmetic only at C or $");
        Term a = normalize(c->lhs), b = normalize(c->rhs);
        if (tl->kind == TypeKind::Cost) require(c, a->cost <= b->cost, "lhs value exceeds rhs value");
        else require(c, a->amount <= b->amount, "lhs value exceeds rhs value");
        return;
      }
      case LeqRule::MaxLeft:
        require(c, c->rhs->kind == Kind::CostMax && alpha_equal(c->rhs->sub[0], c->lhs), "rhs is not max(lhs, _)");
        return;
      case LeqRule::MaxRight:
        require(c, c->rhs->kind == Kind::CostMax && alpha_equal(c->rhs->sub[1], c->lhs), "rhs is not max(_, lhs)");
        return;
      case LeqRule::MaxLub:
        require(c, c->lhs->kind == Kind::CostMax, "lhs is not a max");
        require(c, c->premises.size() == 2 && c->premises[0] && c->premises[1], "needs two premises");
        for (std::size_t i = 0; i < 2; ++i) {
          require(c, alpha_equal(c->premises[i]->lhs, c->lhs->sub[i]), "premise lhs is not a max operand");
          require(c, alpha_equal(c->premises[i]->rhs, c->rhs), "premise rhs differs");
          check(c->premises[i], ctx);
        }
        return;
      case LeqRule::Top:
        require(c, c->rhs->kind == Kind::CostConst && c->rhs->cost.is_inf(), "rhs is not the infinite cost");
        require(c, typecheck(ctx, c->lhs)->kind == TypeKind::Cost, "top only at C");
        return;
    }
    throw MalformedCertificate("unknown rule");
  }

private:
  void require(const CertPtr& c, bool ok, const std::string& why) {
    if (!ok) throw MalformedCertificate(std::string(rule_name(c->rule)) + " at " + show(c->lhs) + " <= " + show(c->rhs) + ": " + why);
  }

  void check_cong(const CertPtr& c, const Context& ctx) {
    const Term &l = c->lhs, &r = c->rhs;
    require(c, same_head(l, r), "heads differ");
    require(c, c->premises.size() == l->sub.size(), "premise count does not match arity");
    for (std::size_t i = 0; i < l->sub.size(); ++i) {
      const CertPtr& p = c->premises[i];
      if (!p) {
        require(c, alpha_equal(l->sub[i], r->sub[i]), "unjustified child " + std::to_string(i));
        continue;
      }
      require(c, congruence_position(l->kind, i), "congruence not admitted at child " + std::to_string(i));
      require(c, alpha_equal(p->lhs, l->sub[i]) && alpha_equal(p->rhs, r->sub[i]),
              "premise does not relate child " + std::to_string(i));
      if (l->kind == Kind::Lam) {
        Context inner = ctx;
        inner[l->x] = l->ty;
        check(p, inner);
      } else {
        check(p, ctx);
      }
    }
  }
};

class Simplifier {
public:
  explicit Simplifier(std::size_t budget) : budget_(budget) {}

  // Returns null when e is already simplified.
  CertPtr run(const Term& e) {
    CertPtr inner;
    Term cur = e;
    if (!e->sub.empty()) {
      std::vector<CertPtr> premises(e->sub.size());
      std::vector<Term> children = e->sub;
      bool changed = false;
      for (std::size_t i = 0; i < e->sub.size(); ++i) {
        if (!congruence_position(e->kind, i)) continue;
        if (CertPtr p = run(e->sub[i])) {
          premises[i] = p;
          children[i] = p->lhs;
          changed = true;
        }
      }
      if (changed) {
        cur = with_children(e, std::move(children));
        inner = cert::cong(cur, e, std::move(premises));
      }
    }
    CertPtr step;
    if (budget_ > 0) {
      if (auto reduct = beta_step(cur)) {
        --budget_;
        step = cert::beta(cur);
        if (CertPtr rest = run(*reduct)) step = cert::trans(rest, step);
      } else if (is_arith(cur->kind) && std::all_of(cur->sub.begin(), cur->sub.end(), is_constant)) {
        --budget_;
        step = cert::arith(normalize(cur), cur);
      }
    }
    if (step && inner) return cert::trans(step, inner);
    return step ? step : inner;
  }

private:
  std::size_t budget_;
};

}  // namespace

bool leq_check(const CertPtr& c, const Term& lhs, const Term& rhs, const Type& t, const Context& ctx) {
  if (!c) throw MalformedCertificate("missing certificate");
  if (!alpha_equal(c->lhs, lhs) || !alpha_equal(c->rhs, rhs))
    throw MalformedCertificate("certificate concludes " + show(c->lhs) + " <= " + show(c->rhs));
  Type tl = typecheck(ctx, lhs), tr = typecheck(ctx, rhs);
  if (!type_equal(tl, t) || !type_equal(tr, t))
    throw MalformedCertificate("sides are not both of type " + show(t));
  CertChecker checker;
  checker.check(c, ctx);
  return true;
}

Simplified beta_simplify(const Term& e, std::size_t max_steps) {
  Simplifier s(max_steps);
  CertPtr c = s.run(e);
  if (!c) return {e, cert::refl(e)};
  return {c->lhs, c};
}

}  // namespace amort::lc
