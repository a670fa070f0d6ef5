#ifndef AMORT_CREDIT_HPP
#define AMORT_CREDIT_HPP

#include <map>
#include <set>
#include <string>

#include "amort/ext.hpp"

namespace amort {

/// A formal sum a1*alpha1 + ... + an*alphan + l over credit variables.
/// Stored normalized: zero coefficients are never kept.
class CreditTerm {
public:
  CreditTerm() = default;
  CreditTerm(ExtNat constant) : constant_(constant) {}  // NOLINT
  static CreditTerm var(const std::string& name, ExtNat coeff = 1);

  const std::map<std::string, ExtNat>& coeffs() const { return coeffs_; }
  ExtNat constant() const { return constant_; }
  ExtNat coeff(const std::string& name) const;

  bool is_zero() const { return coeffs_.empty() && constant_.is_zero(); }
  bool is_closed() const { return coeffs_.empty(); }
  bool mentions(const std::string& name) const { return coeffs_.count(name) != 0; }
  std::set<std::string> free_vars() const;

  friend CreditTerm operator+(const CreditTerm& a, const CreditTerm& b);
  friend CreditTerm operator*(ExtNat k, const CreditTerm& c);
  /// Coefficient-wise truncated subtraction.
  friend CreditTerm monus(const CreditTerm& a, const CreditTerm& b);
  /// Coefficient-wise maximum (least upper bound).
  friend CreditTerm join(const CreditTerm& a, const CreditTerm& b);
  /// Coefficient-wise order.
  friend bool leq(const CreditTerm& a, const CreditTerm& b);
  friend bool operator==(const CreditTerm& a, const CreditTerm& b) = default;

  CreditTerm subst(const std::string& alpha, const CreditTerm& c) const;
  CreditTerm rename(const std::string& from, const std::string& to) const;

  /// "2a+b+3"; "0" for the empty sum.
  std::string to_string() const;
  /// Parses the to_string format (whitespace tolerated). Returns false on error.
  static bool parse(const std::string& text, CreditTerm& out);

private:
  void set_coeff(const std::string& name, ExtNat k);

  std::map<std::string, ExtNat> coeffs_;
  ExtNat constant_{0};
};

CreditTerm credit_subst(const CreditTerm& target, const std::string& alpha, const CreditTerm& c);

/// a1*x1 + ... + an*xn + bank, the annotation on a typing judgment. Uses are
/// keyed by term variable; the bank is a credit term and may be inf.
class ResourceTerm {
public:
  ResourceTerm() = default;
  static ResourceTerm use(const std::string& x, ExtNat k = 1);
  static ResourceTerm credits(const CreditTerm& bank);

  const std::map<std::string, ExtNat>& uses() const { return uses_; }
  const CreditTerm& bank() const { return bank_; }
  ExtNat coeff(const std::string& x) const;

  ResourceTerm without(const std::string& x) const;
  ResourceTerm with_bank(const CreditTerm& bank) const;

  friend ResourceTerm operator+(const ResourceTerm& a, const ResourceTerm& b);
  friend ResourceTerm operator*(ExtNat k, const ResourceTerm& f);
  friend ResourceTerm join(const ResourceTerm& a, const ResourceTerm& b);
  /// Pointwise truncated difference; the deficit reported by checking.
  friend ResourceTerm monus(const ResourceTerm& a, const ResourceTerm& b);
  friend bool operator==(const ResourceTerm& a, const ResourceTerm& b) = default;

  /// g[f/x]: the coefficient of x scales f, which is then added in.
  ResourceTerm subst(const std::string& x, const ResourceTerm& f) const;
  ResourceTerm subst_credit(const std::string& alpha, const CreditTerm& c) const;
  ResourceTerm rename(const std::string& from, const std::string& to) const;

  bool is_zero() const { return uses_.empty() && bank_.is_zero(); }
  std::string to_string() const;

private:
  void set_use(const std::string& x, ExtNat k);

  std::map<std::string, ExtNat> uses_;
  CreditTerm bank_;
};

ResourceTerm resource_subst(const ResourceTerm& g, const std::string& x, const ResourceTerm& f);
/// Coefficient-wise order, missing entries read as 0.
bool resource_leq(const ResourceTerm& f, const ResourceTerm& g);

}  // namespace amort

#endif  // AMORT_CREDIT_HPP
