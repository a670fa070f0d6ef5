#include "amort/syntax.hpp"

#include <cctype>
#include <set>

#include "amort/errors.hpp"

namespace amort::syntax {

using sx::SExpr;

namespace {

[[noreturn]] void fail(const SExpr& e, const std::string& msg) { throw ParseError(msg, e.line, e.column); }

SExpr atom(std::string s) { return SExpr::make_atom(std::move(s)); }
SExpr list(std::vector<SExpr> items) { return SExpr::make_list(std::move(items)); }

// Splits "save[2,a+1]" into "save" and {"2", "a+1"}.
struct Keyword {
  std::string name;
  std::vector<std::string> args;
  bool bracketed = false;
};

Keyword split_keyword(const std::string& text) {
  Keyword k;
  auto open = text.find('[');
  if (open == std::string::npos || text.back() != ']') {
    k.name = text;
    return k;
  }
  k.name = text.substr(0, open);
  k.bracketed = true;
  std::string inner = text.substr(open + 1, text.size() - open - 2);
  std::string cur;
  for (char c : inner) {
    if (c == ',') {
      k.args.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  k.args.push_back(cur);
  return k;
}

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

bool valid_name(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

const std::set<std::string>& la_keywords() {
  static const std::set<std::string> k = {
      "lam", "pair", "let", "inl", "inr", "case", "with", "fst", "snd", "unit", "succ", "nrec", "nil", "cons",
      "list", "lrec", "emp", "node", "treerec", "tick", "create", "spend", "save", "transfer", "pack", "unpack"};
  return k;
}

const std::set<std::string>& lc_keywords() {
  static const std::set<std::string> k = {"lam", "pair", "fst", "snd", "inl", "inr", "case", "unit", "succ",
                                          "nrec", "nil", "cons", "list", "lrec", "emp", "node", "treerec",
                                          "+c", "max", "scale", "neg", "+$", "scale$", "toC"};
  return k;
}

std::string name_of(const SExpr& e, const std::set<std::string>& keywords) {
  if (e.is_list) fail(e, "expected a name");
  if (!valid_name(e.atom) || keywords.count(e.atom)) fail(e, "'" + e.atom + "' is not a valid name");
  return e.atom;
}

ExtNat parse_mult(const SExpr& at, const std::string& s) {
  auto k = ExtNat::parse(s);
  if (!k) fail(at, "bad multiplicity '" + s + "'");
  return *k;
}

CreditTerm parse_credit(const SExpr& at, const std::string& s) {
  CreditTerm c;
  if (!CreditTerm::parse(s, c)) fail(at, "bad credit term '" + s + "'");
  return c;
}

void arity(const SExpr& e, std::size_t n) {
  if (e.items.size() != n)
    fail(e, "'" + e.head() + "' expects " + std::to_string(n - 1) + " arguments, found " +
                std::to_string(e.items.size() - 1));
}

void no_brackets(const SExpr& e, const Keyword& k) {
  if (k.bracketed) fail(e, "'" + k.name + "' takes no bracketed annotation");
}

// ---- affine language ----

la::Type bit_payload() { return la::ty::bang(1, CreditTerm(1), la::ty::unit()); }

la::Term zero_bit() { return la::tm::inl(bit_payload(), la::tm::unit()); }
la::Term one_bit() { return la::tm::inr(la::ty::unit(), la::tm::save(1, CreditTerm(1), la::tm::unit())); }

bool is_zero_bit(const la::Term& m) {
  return m->kind == la::TermKind::Inl && m->sub[0]->kind == la::TermKind::Unit && la::type_equal(m->ty, bit_payload());
}

bool is_one_bit(const la::Term& m) {
  if (m->kind != la::TermKind::Inr || !la::type_equal(m->ty, la::ty::unit())) return false;
  const la::Term& s = m->sub[0];
  return s->kind == la::TermKind::Save && s->mult == ExtNat(1) && s->credit == CreditTerm(1) &&
         s->sub[0]->kind == la::TermKind::Unit;
}

}  // namespace

la::Type la_type_from(const SExpr& e, const TypeAliases& aliases) {
  using namespace la;
  if (!e.is_list) {
    if (e.atom == "1") return ty::unit();
    if (e.atom == "nat") return ty::nat();
    for (auto it = aliases.rbegin(); it != aliases.rend(); ++it)
      if (it->first == e.atom) return it->second;
    fail(e, "unknown type '" + e.atom + "'");
  }
  const std::string& h = e.head();
  auto sub = [&](std::size_t i) { return la_type_from(e.items[i], aliases); };
  if (h == "*" || h == "+" || h == "-o" || h == "&") {
    arity(e, 3);
    if (h == "*") return ty::tensor(sub(1), sub(2));
    if (h == "+") return ty::plus(sub(1), sub(2));
    if (h == "-o") return ty::lolli(sub(1), sub(2));
    return ty::with(sub(1), sub(2));
  }
  if (h == "list" || h == "tree") {
    arity(e, 2);
    return h == "list" ? ty::list(sub(1)) : ty::tree(sub(1));
  }
  if (h == "!") {
    arity(e, 4);
    if (e.items[1].is_list || e.items[2].is_list) fail(e, "'!' expects a multiplicity and a credit term");
    return ty::bang(parse_mult(e.items[1], e.items[1].atom), parse_credit(e.items[2], e.items[2].atom), sub(3));
  }
  if (h == "exists") {
    arity(e, 3);
    return ty::exists(name_of(e.items[1], {}), sub(2));
  }
  fail(e, "unknown type former '" + h + "'");
}

la::Term la_term_from(const SExpr& e, const TypeAliases& aliases) {
  using namespace la;
  auto type = [&](std::size_t i) { return la_type_from(e.items[i], aliases); };
  auto sub = [&](std::size_t i) { return la_term_from(e.items[i], aliases); };
  if (!e.is_list) {
    if (e.atom == "unit") return tm::unit();
    if (e.atom == "0b") return zero_bit();
    if (e.atom == "1b") return one_bit();
    if (is_number(e.atom)) {
      auto n = ExtNat::parse(e.atom);
      if (!n || n->is_inf()) fail(e, "numeral out of range");
      return tm::numeral(n->value());
    }
    return tm::var(name_of(e, la_keywords()));
  }
  if (e.items.empty()) return tm::unit();
  if (e.items[0].is_list) {
    Term f = sub(0);
    if (e.items.size() < 2) fail(e, "application without an argument");
    for (std::size_t i = 1; i < e.items.size(); ++i) f = tm::app(f, sub(i));
    return f;
  }
  Keyword k = split_keyword(e.items[0].atom);
  const std::string& h = k.name;
  auto mult_arg = [&]() -> ExtNat {
    if (!k.bracketed) return 1;
    if (k.args.size() != 1) fail(e, "'" + h + "' expects one bracketed multiplicity");
    return parse_mult(e, k.args[0]);
  };
  auto credit_arg = [&]() -> CreditTerm {
    if (!k.bracketed || k.args.size() != 1) fail(e, "'" + h + "' expects one bracketed credit term");
    return parse_credit(e, k.args[0]);
  };

  if (h == "lam") {
    no_brackets(e, k);
    arity(e, 4);
    return tm::lam(name_of(e.items[1], la_keywords()), type(2), sub(3));
  }
  if (h == "pair" || h == "with" || h == "cons") {
    no_brackets(e, k);
    arity(e, 3);
    if (h == "pair") return tm::pair(sub(1), sub(2));
    if (h == "with") return tm::with(sub(1), sub(2));
    return tm::cons(sub(1), sub(2));
  }
  if (h == "fst" || h == "snd" || h == "succ" || h == "tick") {
    no_brackets(e, k);
    arity(e, 2);
    if (h == "fst") return tm::fst(sub(1));
    if (h == "snd") return tm::snd(sub(1));
    if (h == "succ") return tm::succ(sub(1));
    return tm::tick(sub(1));
  }
  if (h == "let") {
    arity(e, 4);
    const SExpr& b = e.items[1];
    if (b.is_list) {
      if (b.items.size() != 2) fail(b, "tensor let binds exactly two names");
      return tm::let_pair(name_of(b.items[0], la_keywords()), name_of(b.items[1], la_keywords()), sub(2), sub(3),
                          mult_arg());
    }
    no_brackets(e, k);
    return tm::let(name_of(b, la_keywords()), sub(2), sub(3));
  }
  if (h == "inl" || h == "inr") {
    no_brackets(e, k);
    arity(e, 3);
    return h == "inl" ? tm::inl(type(1), sub(2)) : tm::inr(type(1), sub(2));
  }
  if (h == "case") {
    arity(e, 4);
    const SExpr &l = e.items[2], &r = e.items[3];
    if (!l.is_list || l.items.size() != 2 || !r.is_list || r.items.size() != 2)
      fail(e, "case branches are written (x N)");
    return tm::case_(sub(1), name_of(l.items[0], la_keywords()), la_term_from(l.items[1], aliases),
                     name_of(r.items[0], la_keywords()), la_term_from(r.items[1], aliases), mult_arg());
  }
  if (h == "unit") {
    arity(e, 1);
    return tm::unit();
  }
  if (h == "nrec" || h == "lrec") {
    no_brackets(e, k);
    arity(e, 4);
    return h == "nrec" ? tm::nrec(sub(1), sub(2), sub(3)) : tm::lrec(sub(1), sub(2), sub(3));
  }
  if (h == "nil" || h == "emp") {
    no_brackets(e, k);
    arity(e, 2);
    return h == "nil" ? tm::nil(type(1)) : tm::emp(type(1));
  }
  if (h == "list") {
    no_brackets(e, k);
    if (e.items.size() < 2) fail(e, "'list' expects an element type");
    std::vector<Term> items;
    for (std::size_t i = 2; i < e.items.size(); ++i) items.push_back(sub(i));
    return tm::list(type(1), items);
  }
  if (h == "node") {
    no_brackets(e, k);
    arity(e, 5);
    return tm::node(sub(1), sub(2), sub(3), sub(4));
  }
  if (h == "treerec") {
    no_brackets(e, k);
    arity(e, 6);
    return tm::treerec(sub(1), sub(2), sub(3), sub(4), sub(5));
  }
  if (h == "create" || h == "spend") {
    arity(e, 2);
    CreditTerm c = credit_arg();
    return h == "create" ? tm::create(c, sub(1)) : tm::spend(c, sub(1));
  }
  if (h == "save") {
    arity(e, 2);
    if (!k.bracketed || k.args.size() != 2) fail(e, "'save' expects [k,c]");
    return tm::save(parse_mult(e, k.args[0]), parse_credit(e, k.args[1]), sub(1));
  }
  if (h == "transfer") {
    arity(e, 4);
    return tm::transfer(name_of(e.items[1], la_keywords()), sub(2), sub(3), mult_arg());
  }
  if (h == "pack") {
    arity(e, 3);
    return tm::pack(credit_arg(), type(1), sub(2));
  }
  if (h == "unpack") {
    no_brackets(e, k);
    arity(e, 4);
    const SExpr& b = e.items[1];
    if (!b.is_list || b.items.size() != 2) fail(b, "unpack binds (a x)");
    return tm::unpack(name_of(b.items[0], la_keywords()), name_of(b.items[1], la_keywords()), sub(2), sub(3));
  }
  if (la_keywords().count(h) || k.bracketed) fail(e, "malformed '" + h + "' form");
  if (e.items.size() < 2) fail(e, "application without an argument");
  Term f = sub(0);
  for (std::size_t i = 1; i < e.items.size(); ++i) f = tm::app(f, sub(i));
  return f;
}

SExpr to_sexpr(const la::Type& t, const TypeAliases& aliases) {
  using K = la::TypeKind;
  for (auto it = aliases.rbegin(); it != aliases.rend(); ++it)
    if (la::type_equal(it->second, t)) return atom(it->first);
  auto sub = [&](const la::Type& a) { return to_sexpr(a, aliases); };
  switch (t->kind) {
    case K::Unit: return atom("1");
    case K::Nat: return atom("nat");
    case K::Tensor: return list({atom("*"), sub(t->a), sub(t->b)});
    case K::Plus: return list({atom("+"), sub(t->a), sub(t->b)});
    case K::Lolli: return list({atom("-o"), sub(t->a), sub(t->b)});
    case K::With: return list({atom("&"), sub(t->a), sub(t->b)});
    case K::List: return list({atom("list"), sub(t->a)});
    case K::Tree: return list({atom("tree"), sub(t->a)});
    case K::Bang: return list({atom("!"), atom(t->mult.to_string()), atom(t->credit.to_string()), sub(t->a)});
    case K::Exists: return list({atom("exists"), atom(t->binder), sub(t->a)});
  }
  return atom("?");
}

SExpr to_sexpr(const la::Term& m, const TypeAliases& aliases) {
  using K = la::TermKind;
  auto sub = [&](std::size_t i) { return to_sexpr(m->sub[i], aliases); };
  auto type = [&](const la::Type& t) { return to_sexpr(t, aliases); };
  auto with_mult = [&](const char* name) {
    return atom(m->mult == ExtNat(1) ? std::string(name) : std::string(name) + "[" + m->mult.to_string() + "]");
  };
  auto with_credit = [&](const char* name) { return atom(std::string(name) + "[" + m->credit.to_string() + "]"); };
  switch (m->kind) {
    case K::Var:
      return atom(m->x);
    case K::Lam:
      return list({atom("lam"), atom(m->x), type(m->ty), sub(0)});
    case K::App: {
      std::vector<la::Term> argv;
      la::Term walk = m;
      while (walk->kind == K::App) {
        argv.push_back(walk->sub[1]);
        walk = walk->sub[0];
      }
      std::vector<SExpr> items{to_sexpr(walk, aliases)};
      for (auto it = argv.rbegin(); it != argv.rend(); ++it) items.push_back(to_sexpr(*it, aliases));
      return list(std::move(items));
    }
    case K::Pair:
      return list({atom("pair"), sub(0), sub(1)});
    case K::LetPair:
      return list({with_mult("let"), list({atom(m->x), atom(m->y)}), sub(0), sub(1)});
    case K::Inl:
      if (is_zero_bit(m)) return atom("0b");
      return list({atom("inl"), type(m->ty), sub(0)});
    case K::Inr:
      if (is_one_bit(m)) return atom("1b");
      return list({atom("inr"), type(m->ty), sub(0)});
    case K::Case:
      return list({with_mult("case"), sub(0), list({atom(m->x), sub(1)}), list({atom(m->y), sub(2)})});
    case K::With:
      return list({atom("with"), sub(0), sub(1)});
    case K::Fst:
      return list({atom("fst"), sub(0)});
    case K::Snd:
      return list({atom("snd"), sub(0)});
    case K::Unit:
      return atom("unit");
    case K::Zero:
    case K::Succ: {
      if (auto n = la::numeral_value(m)) return atom(std::to_string(*n));
      return list({atom("succ"), sub(0)});
    }
    case K::NRec:
      return list({atom("nrec"), sub(0), sub(1), sub(2)});
    case K::Nil:
      return list({atom("nil"), type(m->ty)});
    case K::Cons: {
      std::vector<SExpr> items;
      la::Term cur = m;
      while (cur->kind == K::Cons) {
        items.push_back(to_sexpr(cur->sub[0], aliases));
        cur = cur->sub[1];
      }
      if (cur->kind != K::Nil) return list({atom("cons"), sub(0), sub(1)});
      std::vector<SExpr> out{atom("list"), type(cur->ty)};
      out.insert(out.end(), items.begin(), items.end());
      return list(std::move(out));
    }
    case K::LRec:
      return list({atom("lrec"), sub(0), sub(1), sub(2)});
    case K::Emp:
      return list({atom("emp"), type(m->ty)});
    case K::Node:
      return list({atom("node"), sub(0), sub(1), sub(2), sub(3)});
    case K::TreeRec:
      return list({atom("treerec"), sub(0), sub(1), sub(2), sub(3), sub(4)});
    case K::Tick:
      return list({atom("tick"), sub(0)});
    case K::Create:
      return list({with_credit("create"), sub(0)});
    case K::Spend:
      return list({with_credit("spend"), sub(0)});
    case K::Save:
      return list({atom("save[" + m->mult.to_string() + "," + m->credit.to_string() + "]"), sub(0)});
    case K::Transfer:
      return list({with_mult("transfer"), atom(m->x), sub(0), sub(1)});
    case K::Pack:
      return list({with_credit("pack"), type(m->ty), sub(0)});
    case K::Unpack:
      return list({atom("unpack"), list({atom(m->x), atom(m->y)}), sub(0), sub(1)});
    case K::Let:
      return list({atom("let"), atom(m->x), sub(0), sub(1)});
  }
  return atom("?");
}

la::Type parse_la_type(const std::string& text, const TypeAliases& aliases) {
  return la_type_from(sx::read_one(text), aliases);
}

la::Term parse_la_term(const std::string& text, const TypeAliases& aliases) {
  return la_term_from(sx::read_one(text), aliases);
}

// ---- recurrence language ----

lc::Type lc_type_from(const SExpr& e) {
  using namespace lc;
  if (!e.is_list) {
    if (e.atom == "C") return ty::cost();
    if (e.atom == "$") return ty::credit();
    if (e.atom == "1") return ty::unit();
    if (e.atom == "nat") return ty::nat();
    fail(e, "unknown type '" + e.atom + "'");
  }
  const std::string& h = e.head();
  if (h == "*" || h == "+" || h == "->") {
    arity(e, 3);
    Type a = lc_type_from(e.items[1]), b = lc_type_from(e.items[2]);
    if (h == "*") return ty::prod(a, b);
    if (h == "+") return ty::sum(a, b);
    return ty::arrow(a, b);
  }
  if (h == "list" || h == "tree") {
    arity(e, 2);
    Type a = lc_type_from(e.items[1]);
    return h == "list" ? ty::list(a) : ty::tree(a);
  }
  fail(e, "unknown type former '" + h + "'");
}

lc::Term lc_term_from(const SExpr& e) {
  using namespace lc;
  auto sub = [&](std::size_t i) { return lc_term_from(e.items[i]); };
  auto type = [&](std::size_t i) { return lc_type_from(e.items[i]); };
  if (!e.is_list) {
    const std::string& a = e.atom;
    if (a == "unit") return tm::unit();
    if (is_number(a)) {
      auto n = ExtNat::parse(a);
      if (!n || n->is_inf()) fail(e, "numeral out of range");
      return tm::numeral(n->value());
    }
    if (a.size() > 1 && a[0] == '#') {
      std::string body = a.substr(1);
      if (body == "inf") return tm::cost(ExtInt::inf());
      bool negative = body[0] == '-';
      std::string digits = negative ? body.substr(1) : body;
      if (!is_number(digits)) fail(e, "bad cost literal '" + a + "'");
      auto n = ExtNat::parse(digits);
      if (!n || n->is_inf() || n->value() > static_cast<std::uint64_t>(INT64_MAX)) fail(e, "cost literal out of range");
      auto v = static_cast<std::int64_t>(n->value());
      return tm::cost(negative ? -v : v);
    }
    if (a.size() > 1 && a[0] == '$') {
      auto n = ExtNat::parse(a.substr(1));
      if (!n) fail(e, "bad credit literal '" + a + "'");
      return tm::credit(*n);
    }
    return tm::var(name_of(e, lc_keywords()));
  }
  if (e.items.empty()) return tm::unit();
  if (e.items[0].is_list) {
    if (e.items.size() < 2) fail(e, "application without an argument");
    Term f = sub(0);
    for (std::size_t i = 1; i < e.items.size(); ++i) f = tm::app(f, sub(i));
    return f;
  }
  Keyword k = split_keyword(e.items[0].atom);
  const std::string& h = k.name;
  auto mult = [&]() -> ExtNat {
    if (!k.bracketed || k.args.size() != 1) fail(e, "'" + h + "' expects a bracketed multiplier");
    return parse_mult(e, k.args[0]);
  };
  if (h == "lam") {
    arity(e, 4);
    return tm::lam(name_of(e.items[1], lc_keywords()), type(2), sub(3));
  }
  if (h == "pair" || h == "cons" || h == "+c" || h == "max" || h == "+$") {
    arity(e, 3);
    if (h == "pair") return tm::pair(sub(1), sub(2));
    if (h == "cons") return tm::cons(sub(1), sub(2));
    if (h == "+c") return tm::add(sub(1), sub(2));
    if (h == "max") return tm::max(sub(1), sub(2));
    return tm::credit_add(sub(1), sub(2));
  }
  if (h == "fst" || h == "snd" || h == "succ" || h == "neg" || h == "toC") {
    arity(e, 2);
    if (h == "fst") return tm::fst(sub(1));
    if (h == "snd") return tm::snd(sub(1));
    if (h == "succ") return tm::succ(sub(1));
    if (h == "neg") return tm::neg(sub(1));
    return tm::to_cost(sub(1));
  }
  if (h == "scale" || h == "scale$") {
    arity(e, 2);
    return h == "scale" ? tm::scale(mult(), sub(1)) : tm::credit_scale(mult(), sub(1));
  }
  if (h == "inl" || h == "inr") {
    arity(e, 3);
    return h == "inl" ? tm::inl(type(1), sub(2)) : tm::inr(type(1), sub(2));
  }
  if (h == "case") {
    arity(e, 4);
    const SExpr &l = e.items[2], &r = e.items[3];
    if (!l.is_list || l.items.size() != 2 || !r.is_list || r.items.size() != 2)
      fail(e, "case branches are written (x E)");
    return tm::case_(sub(1), name_of(l.items[0], lc_keywords()), lc_term_from(l.items[1]),
                     name_of(r.items[0], lc_keywords()), lc_term_from(r.items[1]));
  }
  if (h == "nrec" || h == "lrec") {
    arity(e, 4);
    return h == "nrec" ? tm::nrec(sub(1), sub(2), sub(3)) : tm::lrec(sub(1), sub(2), sub(3));
  }
  if (h == "nil" || h == "emp") {
    arity(e, 2);
    return h == "nil" ? tm::nil(type(1)) : tm::emp(type(1));
  }
  if (h == "list") {
    if (e.items.size() < 2) fail(e, "'list' expects an element type");
    Term out = tm::nil(type(1));
    for (std::size_t i = e.items.size(); i-- > 2;) out = tm::cons(sub(i), out);
    return out;
  }
  if (h == "node") {
    arity(e, 5);
    return tm::node(sub(1), sub(2), sub(3), sub(4));
  }
  if (h == "treerec") {
    arity(e, 6);
    return tm::treerec(sub(1), sub(2), sub(3), sub(4), sub(5));
  }
  if (h == "unit") {
    arity(e, 1);
    return tm::unit();
  }
  if (lc_keywords().count(h) || k.bracketed) fail(e, "malformed '" + h + "' form");
  if (e.items.size() < 2) fail(e, "application without an argument");
  Term f = sub(0);
  for (std::size_t i = 1; i < e.items.size(); ++i) f = tm::app(f, sub(i));
  return f;
}

SExpr to_sexpr(const lc::Type& t) {
  using K = lc::TypeKind;
  switch (t->kind) {
    case K::Cost: return atom("C");
    case K::Credit: return atom("$");
    case K::Unit: return atom("1");
    case K::Nat: return atom("nat");
    case K::Prod: return list({atom("*"), to_sexpr(t->a), to_sexpr(t->b)});
    case K::Sum: return list({atom("+"), to_sexpr(t->a), to_sexpr(t->b)});
    case K::Arrow: return list({atom("->"), to_sexpr(t->a), to_sexpr(t->b)});
    case K::List: return list({atom("list"), to_sexpr(t->a)});
    case K::Tree: return list({atom("tree"), to_sexpr(t->a)});
  }
  return atom("?");
}

SExpr to_sexpr(const lc::Term& e) {
  using K = lc::Kind;
  auto sub = [&](std::size_t i) { return to_sexpr(e->sub[i]); };
  switch (e->kind) {
    case K::Var: return atom(e->x);
    case K::Lam: return list({atom("lam"), atom(e->x), to_sexpr(e->ty), sub(0)});
    case K::App: {
      std::vector<lc::Term> argv;
      lc::Term walk = e;
      while (walk->kind == K::App) {
        argv.push_back(walk->sub[1]);
        walk = walk->sub[0];
      }
      std::vector<SExpr> items{to_sexpr(walk)};
      for (auto it = argv.rbegin(); it != argv.rend(); ++it) items.push_back(to_sexpr(*it));
      return list(std::move(items));
    }
    case K::Pair: return list({atom("pair"), sub(0), sub(1)});
    case K::Fst: return list({atom("fst"), sub(0)});
    case K::Snd: return list({atom("snd"), sub(0)});
    case K::Inl: return list({atom("inl"), to_sexpr(e->ty), sub(0)});
    case K::Inr: return list({atom("inr"), to_sexpr(e->ty), sub(0)});
    case K::Case:
      return list({atom("case"), sub(0), list({atom(e->x), sub(1)}), list({atom(e->y), sub(2)})});
    case K::Unit: return atom("unit");
    case K::Zero:
    case K::Succ: {
      std::uint64_t n = 0;
      if (lc::numeral_value(e, n)) return atom(std::to_string(n));
      return list({atom("succ"), sub(0)});
    }
    case K::NRec: return list({atom("nrec"), sub(0), sub(1), sub(2)});
    case K::Nil: return list({atom("nil"), to_sexpr(e->ty)});
    case K::Cons: return list({atom("cons"), sub(0), sub(1)});
    case K::LRec: return list({atom("lrec"), sub(0), sub(1), sub(2)});
    case K::Emp: return list({atom("emp"), to_sexpr(e->ty)});
    case K::Node: return list({atom("node"), sub(0), sub(1), sub(2), sub(3)});
    case K::TreeRec: return list({atom("treerec"), sub(0), sub(1), sub(2), sub(3), sub(4)});
    case K::CostConst: return atom("#" + e->cost.to_string());
    case K::CostAdd: return list({atom("+c"), sub(0), sub(1)});
    case K::CostMax: return list({atom("max"), sub(0), sub(1)});
    case K::CostScale: return list({atom("scale[" + e->mult.to_string() + "]"), sub(0)});
    case K::CostNeg: return list({atom("neg"), sub(0)});
    case K::CreditConst: return atom("$" + e->amount.to_string());
    case K::CreditAdd: return list({atom("+$"), sub(0), sub(1)});
    case K::CreditScale: return list({atom("scale$[" + e->mult.to_string() + "]"), sub(0)});
    case K::ToCost: return list({atom("toC"), sub(0)});
  }
  return atom("?");
}

lc::Type parse_lc_type(const std::string& text) { return lc_type_from(sx::read_one(text)); }
lc::Term parse_lc_term(const std::string& text) { return lc_term_from(sx::read_one(text)); }

std::string pretty(const la::Term& m, std::size_t width) { return sx::write_pretty(to_sexpr(m), width); }
std::string pretty(const lc::Term& e, std::size_t width) { return sx::write_pretty(to_sexpr(e), width); }

// ---- program files ----

const Definition* ProgramFile::find(const std::string& name) const {
  for (const auto& d : defs)
    if (d.name == name) return &d;
  return nullptr;
}

la::Term ProgramFile::resolve(const std::string& name) const {
  std::size_t idx = defs.size();
  for (std::size_t i = 0; i < defs.size(); ++i)
    if (defs[i].name == name) idx = i;
  if (idx == defs.size()) throw UnboundVariable("no definition named '" + name + "'");
  la::Term out = defs[idx].term;
  for (std::size_t j = idx; j-- > 0;) {
    if (!la::free_vars(out).count(defs[j].name)) continue;
    out = la::subst(out, defs[j].name, resolve(defs[j].name));
  }
  return out;
}

const Definition& ProgramFile::entry() const {
  if (defs.empty()) throw ParseError("program has no definitions", 1, 1);
  if (!main.empty()) {
    if (const Definition* d = find(main)) return *d;
    throw UnboundVariable("main names an unknown definition '" + main + "'");
  }
  return defs.back();
}

ProgramFile parse_program(const std::string& text) {
  ProgramFile p;
  for (const SExpr& form : sx::read_all(text)) {
    const std::string& h = form.head();
    if (h == "type") {
      arity(form, 3);
      p.aliases.emplace_back(name_of(form.items[1], {}), la_type_from(form.items[2], p.aliases));
    } else if (h == "def") {
      if (form.items.size() != 4 && form.items.size() != 5) fail(form, "def expects (def name type [bank] term)");
      Definition d;
      d.name = name_of(form.items[1], la_keywords());
      if (p.find(d.name)) fail(form, "duplicate definition '" + d.name + "'");
      d.type = la_type_from(form.items[2], p.aliases);
      if (form.items.size() == 5) {
        const SExpr& b = form.items[3];
        if (b.is_list) fail(b, "bank must be a credit term");
        std::string s = b.atom;
        if (s.size() >= 2 && s.front() == '[' && s.back() == ']') s = s.substr(1, s.size() - 2);
        d.bank = parse_credit(b, s);
      }
      d.term = la_term_from(form.items.back(), p.aliases);
      d.line = form.line;
      p.defs.push_back(std::move(d));
    } else if (h == "main") {
      arity(form, 2);
      p.main = name_of(form.items[1], {});
    } else {
      fail(form, "expected a (type ..), (def ..) or (main ..) form");
    }
  }
  return p;
}

std::string print_program(const ProgramFile& p) {
  std::string out;
  TypeAliases seen;
  for (const auto& [name, t] : p.aliases) {
    out += sx::write_pretty(list({atom("type"), atom(name), to_sexpr(t, seen)})) + "\n";
    seen.emplace_back(name, t);
  }
  for (const auto& d : p.defs) {
    if (!out.empty()) out += "\n";
    std::vector<SExpr> items{atom("def"), atom(d.name), to_sexpr(d.type, p.aliases)};
    if (!d.bank.is_zero()) items.push_back(atom("[" + d.bank.to_string() + "]"));
    items.push_back(to_sexpr(d.term, p.aliases));
    out += sx::write_pretty(list(std::move(items))) + "\n";
  }
  if (!p.main.empty()) out += "\n" + sx::write_flat(list({atom("main"), atom(p.main)})) + "\n";
  return out;
}

}  // namespace amort::syntax

namespace amort::la {
std::string show(const Type& t) { return sx::write_flat(syntax::to_sexpr(t)); }
std::string show(const Term& m) { return sx::write_flat(syntax::to_sexpr(m)); }
}  // namespace amort::la

namespace amort::lc {
std::string show(const Type& t) { return sx::write_flat(syntax::to_sexpr(t)); }
std::string show(const Term& e) { return sx::write_flat(syntax::to_sexpr(e)); }
}  // namespace amort::lc
