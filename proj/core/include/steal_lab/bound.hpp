#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "steal_lab/exponent.hpp"
#include "steal_lab/rational.hpp"

namespace steal_lab {

/// Constant class P^p M^m (1/B)^b; the constant factor itself is dropped.
struct Monomial {
  Rational p = 0;
  Rational m = 0;
  Rational b = 0;  // power of 1/B, >= 0
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// coef * n^l * log^m(n).
struct Term {
  Monomial coef;
  Exponent l;
  Rational m = 0;

  bool pure_p() const { return coef.p == 1 && coef.m == 0 && coef.b == 0; }
};
bool operator==(const Term& a, const Term& b);

/// `u` absorbs `t`: same powers of M and B, and u is at least t in P, n and
/// log n. P >= 1, so a larger P power only grows the term.
bool dominates(const Term& u, const Term& t);

/// Canonical order: M-dependent terms first, then by decreasing power of
/// 1/B, increasing power of P, decreasing n and log powers.
bool canonical_less(const Term& a, const Term& b);

std::string to_string(const Term& t);

/// Big-O sum of terms, kept deduplicated, pruned of dominated terms and in
/// canonical order.
class BoundExpr {
 public:
  BoundExpr() = default;
  explicit BoundExpr(std::vector<Term> terms);

  /// Throws std::invalid_argument with the offending position.
  static BoundExpr parse(std::string_view text);

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  void add(const Term& t);
  void add(const BoundExpr& e);

  friend bool operator==(const BoundExpr& a, const BoundExpr& b) { return a.terms_ == b.terms_; }

  /// `n^3/(B M^{1/2}) + P^{1/3} n^2 log^{2/3}(n)/B + P n`.
  std::string to_string() const;

 private:
  void normalize();
  std::vector<Term> terms_;
};

/// Unit-coefficient value at the given parameters; log is base 2.
double eval(const Term& t, double n, double P, double M, double B);
double eval(const BoundExpr& e, double n, double P, double M, double B);

}  // namespace steal_lab
