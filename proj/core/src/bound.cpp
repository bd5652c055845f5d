#include "steal_lab/bound.hpp"

#include <algorithm>
#include <cmath>

namespace steal_lab {

namespace {

double as_double(const Rational& r) { return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator()); }

std::string power(const char* sym, const Exponent& e) {
  if (e == Exponent(1)) return sym;
  if (e.is_rational() && e.rational_part().denominator() == 1 && e.rational_part() > 0) {
    return std::string(sym) + "^" + e.to_string();
  }
  return std::string(sym) + "^{" + e.to_string() + "}";
}

std::string log_power(const Rational& m) {
  if (m == 1) return "log(n)";
  if (m.denominator() == 1 && m > 0) return "log^" + to_string(m) + "(n)";
  return "log^{" + to_string(m) + "}(n)";
}

}  // namespace

bool operator==(const Term& a, const Term& b) {
  return a.coef == b.coef && cmp(a.l, b.l) == 0 && a.m == b.m;
}

bool dominates(const Term& u, const Term& t) {
  return u.coef.m == t.coef.m && u.coef.b == t.coef.b && u.coef.p >= t.coef.p && cmp(u.l, t.l) >= 0 && u.m >= t.m;
}

bool canonical_less(const Term& a, const Term& b) {
  const bool am = a.coef.m != 0, bm = b.coef.m != 0;
  if (am != bm) return am;
  if (a.coef.b != b.coef.b) return a.coef.b > b.coef.b;
  if (a.coef.p != b.coef.p) return a.coef.p < b.coef.p;
  if (const auto c = cmp(a.l, b.l); c != 0) return c > 0;
  if (a.m != b.m) return a.m > b.m;
  return a.coef.m < b.coef.m;
}

std::string to_string(const Term& t) {
  std::vector<std::string> num, den;
  if (t.coef.p > 0) num.push_back(power("P", t.coef.p));
  if (t.coef.p < 0) den.push_back(power("P", -t.coef.p));
  if (cmp(t.l, 0) != 0) num.push_back(power("n", t.l));
  if (t.m != 0) num.push_back(log_power(t.m));
  if (t.coef.m > 0) num.push_back(power("M", t.coef.m));
  if (t.coef.b > 0) den.push_back(power("B", t.coef.b));
  if (t.coef.m < 0) den.push_back(power("M", -t.coef.m));
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
    return s;
  };
  std::string out = num.empty() ? "1" : join(num);
  if (den.size() == 1) out += "/" + den[0];
  if (den.size() > 1) out += "/(" + join(den) + ")";
  return out;
}

BoundExpr::BoundExpr(std::vector<Term> terms) : terms_(std::move(terms)) { normalize(); }

void BoundExpr::add(const Term& t) {
  terms_.push_back(t);
  normalize();
}

void BoundExpr::add(const BoundExpr& e) {
  terms_.insert(terms_.end(), e.terms_.begin(), e.terms_.end());
  normalize();
}

void BoundExpr::normalize() {
  std::vector<Term> kept;
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < terms_.size() && !drop; ++j) {
      if (i == j || !dominates(terms_[j], terms_[i])) continue;
      // among equal terms keep the first
      drop = !(terms_[i] == terms_[j]) || j < i;
    }
    if (!drop) kept.push_back(terms_[i]);
  }
  std::sort(kept.begin(), kept.end(), canonical_less);
  terms_ = std::move(kept);
}

std::string BoundExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& t : terms_) s += (s.empty() ? "" : " + ") + steal_lab::to_string(t);
  return s;
}

double eval(const Term& t, double n, double P, double M, double B) {
  const double lg = n > 1 ? std::log2(n) : 0.0;
  double v = std::pow(P, as_double(t.coef.p)) * std::pow(M, as_double(t.coef.m)) / std::pow(B, as_double(t.coef.b));
  v *= std::pow(n, static_cast<double>(t.l.value()));
  if (t.m != 0) v *= std::pow(lg, as_double(t.m));
  return v;
}

double eval(const BoundExpr& e, double n, double P, double M, double B) {
  double s = 0;
  for (const auto& t : e.terms()) s += eval(t, n, P, M, B);
  return s;
}

}  // namespace steal_lab
