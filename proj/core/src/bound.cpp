#include "amort/bound.hpp"

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "amort/errors.hpp"
#include "amort/extract.hpp"
#include "amort/la_typecheck.hpp"
#include "amort/reclang.hpp"

namespace amort {

namespace {

ExtInt credit_amount(const lc::Term& p) {
  if (p->kind == lc::Kind::CreditConst) return ExtInt::from_nat(p->amount);
  return ExtInt::inf();
}

bool fail(std::string* why, const std::string& msg) {
  if (why && why->empty()) *why = msg;
  return false;
}

std::vector<la::Term> list_items(la::Term v) {
  std::vector<la::Term> out;
  while (v->kind == la::TermKind::Cons) {
    out.push_back(v->sub[0]);
    v = v->sub[1];
  }
  return out;
}

std::vector<lc::Term> list_items(lc::Term p) {
  std::vector<lc::Term> out;
  while (p->kind == lc::Kind::Cons) {
    out.push_back(p->sub[0]);
    p = p->sub[1];
  }
  return out;
}

}  // namespace

bool first_order(const la::Type& a) {
  switch (a->kind) {
    case la::TypeKind::Unit:
    case la::TypeKind::Nat:
      return true;
    case la::TypeKind::Tensor:
    case la::TypeKind::Plus:
      return first_order(a->a) && first_order(a->b);
    case la::TypeKind::List:
    case la::TypeKind::Tree:
    case la::TypeKind::Bang:
    case la::TypeKind::Exists:
      return first_order(a->a);
    default:
      return false;
  }
}

bool value_bounded(const la::Term& v, const lc::Term& p, const la::Type& a, std::string* why) {
  using K = la::TypeKind;
  switch (a->kind) {
    case K::Unit:
      return true;
    case K::Nat: {
      auto n = la::numeral_value(v);
      std::uint64_t bound = 0;
      if (!n) return fail(why, "not a numeral: " + la::show(v));
      if (!lc::numeral_value(p, bound)) return fail(why, "potential is not a numeral: " + lc::show(p));
      if (*n > bound) return fail(why, std::to_string(*n) + " exceeds potential " + std::to_string(bound));
      return true;
    }
    case K::Bang:
      if (v->kind != la::TermKind::Save) return fail(why, "expected a saved value");
      return value_bounded(v->sub[0], p, a->a, why);
    case K::Exists: {
      if (v->kind != la::TermKind::Pack || p->kind != lc::Kind::Pair)
        return fail(why, "expected a package against a pair");
      if (!v->credit.is_closed()) return fail(why, "open credit amount in a value");
      ExtInt have = ExtInt::from_nat(v->credit.constant());
      ExtInt room = credit_amount(p->sub[0]);
      if (room < have) return fail(why, "packed " + have.to_string() + " credits exceed " + room.to_string());
      return value_bounded(v->sub[0], p->sub[1], la::subst_credit(a->a, a->binder, v->credit), why);
    }
    case K::Tensor:
      if (v->kind != la::TermKind::Pair || p->kind != lc::Kind::Pair) return fail(why, "expected pairs");
      return value_bounded(v->sub[0], p->sub[0], a->a, why) && value_bounded(v->sub[1], p->sub[1], a->b, why);
    case K::Plus:
      if (v->kind == la::TermKind::Inl && p->kind == lc::Kind::Inl)
        return value_bounded(v->sub[0], p->sub[0], a->a, why);
      if (v->kind == la::TermKind::Inr && p->kind == lc::Kind::Inr)
        return value_bounded(v->sub[0], p->sub[0], a->b, why);
      return fail(why, "injection tags differ");
    case K::List: {
      auto vs = list_items(v);
      auto ps = list_items(p);
      if (vs.size() > ps.size())
        return fail(why, "length " + std::to_string(vs.size()) + " exceeds potential " + std::to_string(ps.size()));
      for (std::size_t i = 0; i < vs.size(); ++i)
        if (!value_bounded(vs[i], ps[i], a->a, why)) return false;
      return true;
    }
    case K::Tree: {
      if (v->kind == la::TermKind::Emp) return true;
      if (v->kind != la::TermKind::Node || p->kind != lc::Kind::Node) return fail(why, "tree shapes differ");
      return value_bounded(v->sub[0], p->sub[0], a->a, why) &&
             value_bounded(v->sub[1], p->sub[1], la::ty::nat(), why) &&
             value_bounded(v->sub[2], p->sub[2], a, why) && value_bounded(v->sub[3], p->sub[3], a, why);
    }
    default:
      return true;
  }
}

BoundEntry check_bound(const la::Term& m, const CreditTerm& bank, const std::string& input, std::uint64_t size,
                       const BoundOptions& opts) {
  BoundEntry e;
  e.input = input.empty() ? la::show(m) : input;
  e.size = size;

  auto typed = la::synthesize({}, m);
  la::check({}, ResourceTerm::credits(bank), m, typed.type);
  auto run = la::eval(m, opts.eval);
  e.cost = run.cost;
  Complexity c = extract(typed.derivation);
  e.bound = lc::normalize_cost(c.cost(), opts.eval.fuel);

  ExtInt n(static_cast<std::int64_t>(e.cost.n));
  ExtInt r(e.cost.r);
  std::ostringstream why;
  if (!(n <= e.bound + -r)) why << "n=" << e.cost.n << " exceeds bound - r = " << (e.bound + -r).to_string();
  if (bank.is_zero()) {
    if (e.cost.r < 0) why << (why.tellp() ? "; " : "") << "negative credit delta without a bank";
    if (!(n <= e.bound)) why << (why.tellp() ? "; " : "") << "n exceeds bound";
  }
  if (opts.check_values && first_order(typed.type)) {
    std::string vwhy;
    lc::Term p = lc::normalize(c.potential(), opts.eval.fuel);
    if (!value_bounded(run.value, p, typed.type, &vwhy))
      why << (why.tellp() ? "; " : "") << "value not bounded: " << vwhy;
  }
  e.detail = why.str();
  e.ok = e.detail.empty();
  return e;
}

void require_bound(const BoundEntry& e, const la::Term& m) {
  if (e.ok) return;
  la::EvalOptions opts;
  opts.trace = true;
  std::ostringstream msg;
  msg << e.input << ": " << e.detail << " (n=" << e.cost.n << ", r=" << e.cost.r
      << ", bound=" << e.bound.to_string() << ")\n";
  try {
    for (const auto& t : la::eval(m, opts).trace) msg << "  " << t.rule << " " << t.dn << " " << t.dr << "\n";
  } catch (const Error&) {
  }
  throw BoundViolation(msg.str());
}

bool BoundReport::ok() const { return failures() == 0; }

std::size_t BoundReport::failures() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.ok; }));
}

std::vector<BoundRow> BoundReport::rows() const {
  std::map<std::uint64_t, BoundRow> by_size;
  for (const auto& e : entries) {
    auto [it, fresh] = by_size.try_emplace(e.size);
    BoundRow& row = it->second;
    if (fresh) {
      row.size = e.size;
      row.max_amortized = e.amortized();
      row.max_bound = e.bound;
    }
    ++row.inputs;
    row.max_n = std::max(row.max_n, e.cost.n);
    row.max_amortized = std::max(row.max_amortized, e.amortized());
    row.max_bound = max(row.max_bound, e.bound);
    row.ok = row.ok && e.ok;
  }
  std::vector<BoundRow> out;
  for (auto& [_, row] : by_size) out.push_back(row);
  return out;
}

std::string BoundReport::table() const {
  std::size_t w = 5;
  for (const auto& e : entries) w = std::max(w, std::min<std::size_t>(e.input.size(), 48));
  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(w)) << "input" << std::right << std::setw(6) << "size"
      << std::setw(8) << "n" << std::setw(8) << "r" << std::setw(8) << "n+r" << std::setw(8) << "bound"
      << "  verdict\n";
  for (const auto& e : entries) {
    std::string in = e.input.size() > 48 ? e.input.substr(0, 45) + "..." : e.input;
    out << std::left << std::setw(static_cast<int>(w)) << in << std::right << std::setw(6) << e.size
        << std::setw(8) << e.cost.n << std::setw(8) << e.cost.r << std::setw(8) << e.amortized()
        << std::setw(8) << e.bound.to_string() << "  " << (e.ok ? "pass" : "FAIL");
    if (!e.ok) out << "  " << e.detail;
    out << "\n";
  }
  return out.str();
}

std::string BoundReport::records() const {
  std::ostringstream out;
  out << "size,n,r,bound,verdict\n";
  for (const auto& e : entries)
    out << e.size << "," << e.cost.n << "," << e.cost.r << "," << e.bound.to_string() << ","
        << (e.ok ? "pass" : "fail") << "\n";
  return out.str();
}

}  // namespace amort
