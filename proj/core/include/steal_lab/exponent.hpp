#pragma once

#include <compare>
#include <cstdint>
#include <string>

#include "steal_lab/rational.hpp"

namespace steal_lab {

/// r + s * log_base(arg), kept exact. Logs are normalized so that arg and
/// base are not perfect powers of a common root; log_4(8) becomes 3/2 and
/// log_4(9) becomes log_2(3).
class Exponent {
 public:
  Exponent() = default;
  Exponent(Rational r) : r_(r) {}  // NOLINT(implicit)
  Exponent(std::int64_t v) : r_(v) {}  // NOLINT(implicit)

  /// log_beta(alpha); alpha >= 1, beta >= 2. Throws std::invalid_argument.
  static Exponent log(std::int64_t alpha, std::int64_t beta);
  static Exponent make(Rational r, Rational s, std::int64_t arg, std::int64_t base);

  bool is_rational() const { return s_ == 0; }
  const Rational& rational_part() const { return r_; }
  const Rational& log_scale() const { return s_; }
  std::int64_t log_arg() const { return arg_; }
  std::int64_t log_base() const { return base_; }

  long double value() const;

  /// Throws std::domain_error when both sides carry different logs.
  Exponent operator+(const Exponent& o) const;
  Exponent operator-(const Exponent& o) const { return *this + o * Rational(-1); }
  Exponent operator*(const Rational& k) const { return make(r_ * k, s_ * k, arg_, base_); }

  friend bool operator==(const Exponent&, const Exponent&) = default;

  /// "2", "2/3", "log_2(3)", "1 + 2 log_2(3)".
  std::string to_string() const;

 private:
  Rational r_ = 0;
  Rational s_ = 0;
  std::int64_t arg_ = 1;
  std::int64_t base_ = 1;
};

/// Exact for rationals and for a rational against a single log (integer power
/// comparison); two unrelated logs are compared in long double.
std::strong_ordering cmp(const Exponent& a, const Exponent& b);

/// Largest e with x = root^e; returns {root, e}.
std::pair<std::int64_t, int> perfect_root(std::int64_t x);

}  // namespace steal_lab
