#include "steal_lab/exponent.hpp"

#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

namespace steal_lab {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t ipow_checked(std::int64_t b, int e) {
  std::int64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > INT64_MAX / b) return -1;
    r *= b;
  }
  return r;
}

std::strong_ordering sign_of(const Rational& r) {
  if (r > 0) return std::strong_ordering::greater;
  if (r < 0) return std::strong_ordering::less;
  return std::strong_ordering::equal;
}

std::strong_ordering flip(std::strong_ordering o) {
  if (o == std::strong_ordering::less) return std::strong_ordering::greater;
  if (o == std::strong_ordering::greater) return std::strong_ordering::less;
  return o;
}

// log_base(arg) against p/d > 0, i.e. arg^d against base^p.
std::strong_ordering log_vs_rational(std::int64_t arg, std::int64_t base, const Rational& q) {
  const auto p = q.numerator();
  const auto d = q.denominator();
  if (p > 4096 || d > 4096) {
    const long double l = std::log(static_cast<long double>(arg)) / std::log(static_cast<long double>(base));
    const long double v = static_cast<long double>(p) / static_cast<long double>(d);
    return l < v ? std::strong_ordering::less : (l > v ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  using boost::multiprecision::cpp_int;
  const cpp_int lhs = boost::multiprecision::pow(cpp_int(arg), static_cast<unsigned>(d));
  const cpp_int rhs = boost::multiprecision::pow(cpp_int(base), static_cast<unsigned>(p));
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace

std::pair<std::int64_t, int> perfect_root(std::int64_t x) {
  if (x < 2) return {x, 1};
  for (int e = 62; e >= 2; --e) {
    auto r = static_cast<std::int64_t>(std::llround(std::pow(static_cast<long double>(x), 1.0L / e)));
    for (std::int64_t c = std::max<std::int64_t>(2, r - 1); c <= r + 1; ++c) {
      if (ipow_checked(c, e) == x) return {c, e};
    }
  }
  return {x, 1};
}

Exponent Exponent::log(std::int64_t alpha, std::int64_t beta) {
  if (alpha < 1) throw std::invalid_argument("log: alpha must be >= 1");
  if (beta < 2) throw std::invalid_argument("log: beta must be >= 2");
  return make(0, 1, alpha, beta);
}

Exponent Exponent::make(Rational r, Rational s, std::int64_t arg, std::int64_t base) {
  Exponent e;
  e.r_ = r;
  if (s == 0 || arg == 1) return e;
  if (arg < 1 || base < 2) throw std::invalid_argument("log: need arg >= 1 and base >= 2");
  const auto [ra, ea] = perfect_root(arg);
  const auto [rb, eb] = perfect_root(base);
  const Rational k = s * Rational(ea, eb);
  if (ra == rb) {
    e.r_ += k;
    return e;
  }
  e.s_ = k;
  e.arg_ = ra;
  e.base_ = rb;
  return e;
}

long double Exponent::value() const {
  long double v = static_cast<long double>(r_.numerator()) / static_cast<long double>(r_.denominator());
  if (s_ != 0) {
    v += static_cast<long double>(s_.numerator()) / static_cast<long double>(s_.denominator()) *
         std::log(static_cast<long double>(arg_)) / std::log(static_cast<long double>(base_));
  }
  return v;
}

Exponent Exponent::operator+(const Exponent& o) const {
  if (s_ == 0) return make(r_ + o.r_, o.s_, o.arg_, o.base_);
  if (o.s_ == 0) return make(r_ + o.r_, s_, arg_, base_);
  if (arg_ != o.arg_ || base_ != o.base_) {
    throw std::domain_error("cannot add " + to_string() + " and " + o.to_string());
  }
  return make(r_ + o.r_, s_ + o.s_, arg_, base_);
}

std::string Exponent::to_string() const {
  if (s_ == 0) return steal_lab::to_string(r_);
  std::string log = "log_" + std::to_string(base_) + "(" + std::to_string(arg_) + ")";
  std::string out;
  if (r_ != 0) out = steal_lab::to_string(r_) + (s_ > 0 ? " + " : " - ");
  else if (s_ < 0) out = "-";
  const Rational mag = s_ > 0 ? s_ : -s_;
  if (mag != 1) out += steal_lab::to_string(mag) + " ";
  return out + log;
}

std::strong_ordering cmp(const Exponent& a, const Exponent& b) {
  const bool same_log = a.is_rational() || b.is_rational() ||
                        (a.log_arg() == b.log_arg() && a.log_base() == b.log_base());
  if (!same_log) {
    const long double d = a.value() - b.value();
    if (std::fabs(d) < 1e-15L) return std::strong_ordering::equal;
    return d < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  const Exponent d = a - b;  // r + s L with L > 0
  const Rational& r = d.rational_part();
  const Rational& s = d.log_scale();
  if (s == 0) return sign_of(r);
  // r + s L = s (L - q)
  const Rational q = -r / s;
  std::strong_ordering l_vs_q = q <= 0 ? std::strong_ordering::greater : log_vs_rational(d.log_arg(), d.log_base(), q);
  return s > 0 ? l_vs_q : flip(l_vs_q);
}

}  // namespace steal_lab
