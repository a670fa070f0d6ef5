#include "amort/credit.hpp"

#include <cctype>
#include <sstream>

namespace amort {

namespace {

std::string term_to_string(const std::map<std::string, ExtNat>& coeffs, const CreditTerm* bank) {
  std::string out;
  auto emit = [&out](const std::string& piece) {
    if (!out.empty()) out += "+";
    out += piece;
  };
  auto emit_var = [&](const std::string& name, ExtNat k) {
    emit(k == ExtNat(1) ? name : k.to_string() + name);
  };
  for (const auto& [name, k] : coeffs) emit_var(name, k);
  if (bank) {
    for (const auto& [name, k] : bank->coeffs()) emit_var(name, k);
    if (!bank->constant().is_zero()) emit(bank->constant().to_string());
  }
  return out.empty() ? "0" : out;
}

}  // namespace

// ---- CreditTerm ----

CreditTerm CreditTerm::var(const std::string& name, ExtNat coeff) {
  CreditTerm c;
  c.set_coeff(name, coeff);
  return c;
}

void CreditTerm::set_coeff(const std::string& name, ExtNat k) {
  if (k.is_zero())
    coeffs_.erase(name);
  else
    coeffs_[name] = k;
}

ExtNat CreditTerm::coeff(const std::string& name) const {
  auto it = coeffs_.find(name);
  return it == coeffs_.end() ? ExtNat(0) : it->second;
}

std::set<std::string> CreditTerm::free_vars() const {
  std::set<std::string> out;
  for (const auto& entry : coeffs_) out.insert(entry.first);
  return out;
}

CreditTerm operator+(const CreditTerm& a, const CreditTerm& b) {
  CreditTerm out = a;
  for (const auto& [name, k] : b.coeffs_) out.set_coeff(name, out.coeff(name) + k);
  out.constant_ = a.constant_ + b.constant_;
  return out;
}

CreditTerm operator*(ExtNat k, const CreditTerm& c) {
  CreditTerm out;
  for (const auto& [name, m] : c.coeffs_) out.set_coeff(name, k * m);
  out.constant_ = k * c.constant_;
  return out;
}

CreditTerm monus(const CreditTerm& a, const CreditTerm& b) {
  CreditTerm out;
  for (const auto& [name, k] : a.coeffs_) out.set_coeff(name, monus(k, b.coeff(name)));
  out.constant_ = monus(a.constant_, b.constant_);
  return out;
}

CreditTerm join(const CreditTerm& a, const CreditTerm& b) {
  CreditTerm out = a;
  for (const auto& [name, k] : b.coeffs_) out.set_coeff(name, max(out.coeff(name), k));
  out.constant_ = max(a.constant_, b.constant_);
  return out;
}

bool leq(const CreditTerm& a, const CreditTerm& b) {
  for (const auto& [name, k] : a.coeffs_)
    if (!(k <= b.coeff(name))) return false;
  return a.constant_ <= b.constant_;
}

CreditTerm CreditTerm::subst(const std::string& alpha, const CreditTerm& c) const {
  ExtNat k = coeff(alpha);
  if (k.is_zero()) return *this;
  CreditTerm rest = *this;
  rest.coeffs_.erase(alpha);
  return rest + k * c;
}

CreditTerm CreditTerm::rename(const std::string& from, const std::string& to) const {
  return subst(from, CreditTerm::var(to));
}

std::string CreditTerm::to_string() const {
  std::map<std::string, ExtNat> none;
  return term_to_string(none, this);
}

bool CreditTerm::parse(const std::string& text, CreditTerm& out) {
  out = CreditTerm();
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) return false;
  std::stringstream ss(s);
  std::string piece;
  while (std::getline(ss, piece, '+')) {
    if (piece.empty()) return false;
    if (piece == "inf") {
      out.constant_ = out.constant_ + ExtNat::inf();
      continue;
    }
    std::size_t i = 0;
    while (i < piece.size() && std::isdigit(static_cast<unsigned char>(piece[i]))) ++i;
    std::string digits = piece.substr(0, i);
    std::string name = piece.substr(i);
    if (name.rfind("inf", 0) == 0 && digits.empty() && name.size() > 3) {
      // "infa": an infinite coefficient on variable a
      out.set_coeff(name.substr(3), out.coeff(name.substr(3)) + ExtNat::inf());
      continue;
    }
    ExtNat k = 1;
    if (!digits.empty()) {
      auto parsed = ExtNat::parse(digits);
      if (!parsed) return false;
      k = *parsed;
    }
    if (name.empty()) {
      out.constant_ = out.constant_ + k;
      continue;
    }
    if (!(std::isalpha(static_cast<unsigned char>(name[0])) || name[0] == '_')) return false;
    for (char ch : name)
      if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'')) return false;
    out.set_coeff(name, out.coeff(name) + k);
  }
  return true;
}

CreditTerm credit_subst(const CreditTerm& target, const std::string& alpha, const CreditTerm& c) {
  return target.subst(alpha, c);
}

// ---- ResourceTerm ----

ResourceTerm ResourceTerm::use(const std::string& x, ExtNat k) {
  ResourceTerm f;
  f.set_use(x, k);
  return f;
}

ResourceTerm ResourceTerm::credits(const CreditTerm& bank) {
  ResourceTerm f;
  f.bank_ = bank;
  return f;
}

void ResourceTerm::set_use(const std::string& x, ExtNat k) {
  if (k.is_zero())
    uses_.erase(x);
  else
    uses_[x] = k;
}

ExtNat ResourceTerm::coeff(const std::string& x) const {
  auto it = uses_.find(x);
  return it == uses_.end() ? ExtNat(0) : it->second;
}

ResourceTerm ResourceTerm::without(const std::string& x) const {
  ResourceTerm out = *this;
  out.uses_.erase(x);
  return out;
}

ResourceTerm ResourceTerm::with_bank(const CreditTerm& bank) const {
  ResourceTerm out = *this;
  out.bank_ = bank;
  return out;
}

ResourceTerm operator+(const ResourceTerm& a, const ResourceTerm& b) {
  ResourceTerm out = a;
  for (const auto& [x, k] : b.uses_) out.set_use(x, out.coeff(x) + k);
  out.bank_ = a.bank_ + b.bank_;
  return out;
}

ResourceTerm operator*(ExtNat k, const ResourceTerm& f) {
  ResourceTerm out;
  for (const auto& [x, m] : f.uses_) out.set_use(x, k * m);
  out.bank_ = k * f.bank_;
  return out;
}

ResourceTerm join(const ResourceTerm& a, const ResourceTerm& b) {
  ResourceTerm out = a;
  for (const auto& [x, k] : b.uses_) out.set_use(x, max(out.coeff(x), k));
  out.bank_ = join(a.bank_, b.bank_);
  return out;
}

ResourceTerm monus(const ResourceTerm& a, const ResourceTerm& b) {
  ResourceTerm out;
  for (const auto& [x, k] : a.uses_) out.set_use(x, monus(k, b.coeff(x)));
  out.bank_ = monus(a.bank_, b.bank_);
  return out;
}

ResourceTerm ResourceTerm::subst(const std::string& x, const ResourceTerm& f) const {
  ExtNat k = coeff(x);
  ResourceTerm rest = without(x);
  if (k.is_zero()) return rest;
  return rest + k * f;
}

ResourceTerm ResourceTerm::subst_credit(const std::string& alpha, const CreditTerm& c) const {
  ResourceTerm out = *this;
  out.bank_ = bank_.subst(alpha, c);
  return out;
}

ResourceTerm ResourceTerm::rename(const std::string& from, const std::string& to) const {
  return subst(from, ResourceTerm::use(to));
}

std::string ResourceTerm::to_string() const { return term_to_string(uses_, &bank_); }

ResourceTerm resource_subst(const ResourceTerm& g, const std::string& x, const ResourceTerm& f) {
  return g.subst(x, f);
}

bool resource_leq(const ResourceTerm& f, const ResourceTerm& g) {
  for (const auto& [x, k] : f.uses())
    if (!(k <= g.coeff(x))) return false;
  return leq(f.bank(), g.bank());
}

}  // namespace amort
