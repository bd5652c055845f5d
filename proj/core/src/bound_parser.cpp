#include <cctype>
#include <stdexcept>
#include <string>

#include "steal_lab/recurrence.hpp"

namespace steal_lab {

namespace {

// Running product of factors; `num` only matters for recurrence multipliers.
struct Product {
  Rational num = 1;
  Rational p = 0, m = 0, b = 0;
  Exponent l;
  Rational lg = 0;
  bool any = false;

  void mul(const Product& o) {
    num *= o.num;
    p += o.p;
    m += o.m;
    b += o.b;
    l = l + o.l;
    lg += o.lg;
    any = any || o.any;
  }
  void raise(const Rational& k) {
    if (k.denominator() == 1) {
      Rational r = 1;
      const auto e = k.numerator();
      for (std::int64_t i = 0; i < (e < 0 ? -e : e); ++i) r *= num;
      num = e < 0 ? 1 / r : r;
    } else if (num != 1) {
      throw std::invalid_argument("fractional power of a constant");
    }
    p *= k;
    m *= k;
    b *= k;
    l = l * k;
    lg *= k;
  }
};

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("parse error at column " + std::to_string(pos_ + 1) + ": " + what + " in '" +
                                std::string(s_) + "'");
  }

  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    ws();
    return pos_ >= s_.size();
  }
  bool peek(char c) {
    ws();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  bool eat_word(std::string_view w) {
    ws();
    if (s_.substr(pos_, w.size()) != w) return false;
    pos_ += w.size();
    return true;
  }
  void expect_word(std::string_view w) {
    if (!eat_word(w)) fail("expected '" + std::string(w) + "'");
  }

  std::int64_t number() {
    ws();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected a number");
    std::int64_t v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (v > (INT64_MAX - 9) / 10) fail("number too large");
      v = v * 10 + (s_[pos_++] - '0');
    }
    return v;
  }

  // Primitive name directly followed by '('; not consumed.
  std::optional<std::pair<Primitive, std::size_t>> peek_primitive() {
    ws();
    static constexpr std::pair<std::string_view, Primitive> kNames[] = {
        {"GRID2D", Primitive::grid2d}, {"SQUARE", Primitive::square}, {"TRS", Primitive::trs},
        {"MM", Primitive::mm},         {"MT", Primitive::mt},         {"2D", Primitive::grid2d}};
    for (const auto& [name, prim] : kNames) {
      if (s_.substr(pos_, name.size()) != name) continue;
      std::size_t q = pos_ + name.size();
      while (q < s_.size() && std::isspace(static_cast<unsigned char>(s_[q]))) ++q;
      if (q < s_.size() && s_[q] == '(') return std::pair{prim, name.size()};
    }
    return std::nullopt;
  }

  Rational rational() {
    const bool neg = eat('-');
    Rational r = number();
    if (eat('/')) {
      const auto d = number();
      if (d == 0) fail("zero denominator");
      r /= d;
    }
    return neg ? -r : r;
  }

  // rat | [rat] log_b(a)
  Exponent exponent_part() {
    ws();
    Rational k = 1;
    bool have_k = false;
    if (!peek('l')) {
      k = rational();
      have_k = true;
    }
    if (eat_word("log_")) {
      const auto base = number();
      expect('(');
      const auto arg = number();
      expect(')');
      if (base < 2 || arg < 1) fail("log needs base >= 2 and argument >= 1");
      return Exponent::make(0, k, arg, base);
    }
    if (!have_k) fail("expected an exponent");
    return Exponent(k);
  }

  Exponent exponent_sum() {
    Exponent e = eat('-') ? exponent_part() * Rational(-1) : exponent_part();
    for (;;) {
      if (eat('+')) {
        e = e + exponent_part();
      } else if (peek('-')) {
        ++pos_;
        e = e - exponent_part();
      } else {
        return e;
      }
    }
  }

  // After '^': an integer or a braced exponent.
  Exponent power() {
    if (eat('{')) {
      Exponent e;
      try {
        e = exponent_sum();
      } catch (const std::domain_error& ex) {
        fail(ex.what());
      }
      expect('}');
      return e;
    }
    const bool neg = eat('-');
    const Rational v = number();
    return neg ? -v : v;
  }

  Rational rational_power() {
    const Exponent e = power();
    if (!e.is_rational()) fail("only n takes a logarithmic exponent");
    return e.rational_part();
  }

  bool starts_factor() {
    ws();
    if (pos_ >= s_.size() || peek_primitive()) return false;
    const char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '(') return true;
    return c == 'P' || c == 'M' || c == 'B' || c == 'n' || s_.substr(pos_, 3) == "log" || s_.substr(pos_, 4) == "sqrt";
  }

  Product factor() {
    ws();
    Product f;
    f.any = true;
    if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      const auto v = number();
      if (v == 0) fail("zero coefficient");
      f.num = v;
    } else if (eat('(')) {
      f = term();
      expect(')');
    } else if (eat_word("sqrt")) {
      expect('(');
      f = term();
      expect(')');
      f.raise(Rational(1, 2));
      return f;
    } else if (eat_word("log")) {
      f.lg = peek('^') ? (++pos_, rational_power()) : Rational(1);
      if (eat('(')) {
        expect('n');
        expect(')');
      }
      return f;
    } else if (eat('P')) {
      f.p = 1;
    } else if (eat('M')) {
      f.m = 1;
    } else if (eat('B')) {
      f.b = -1;  // stored as power of 1/B
    } else if (eat('n')) {
      f.l = 1;
    } else {
      fail("unexpected input");
    }
    if (eat('^')) {
      if (f.l == Exponent(1) && f.p == 0 && f.m == 0 && f.b == 0 && f.lg == 0) {
        f.l = power();
      } else {
        f.raise(rational_power());
      }
    }
    return f;
  }

  Product term() {
    Product t;
    bool first = true;
    for (;;) {
      if (eat('*')) {
        t.mul(factor());
      } else if (eat('/')) {
        Product d = factor();
        d.raise(-1);
        t.mul(d);
      } else if (starts_factor()) {
        t.mul(factor());
      } else {
        if (first) fail("expected a term");
        return t;
      }
      first = false;
    }
  }

  Term bound_term() {
    const Product p = term();
    if (p.b < 0) fail("B may only appear in a denominator");
    Term t;
    t.coef = {p.p, p.m, p.b};
    t.l = p.l;
    t.m = p.lg;
    return t;
  }

  BoundExpr bound_sum() {
    std::vector<Term> terms{bound_term()};
    while (eat('+')) terms.push_back(bound_term());
    return BoundExpr(std::move(terms));
  }

  ParsedRecurrence recurrence() {
    ParsedRecurrence out;
    expect('Q');
    expect('(');
    expect('n');
    expect(')');
    expect('=');
    ws();
    out.shape.alpha = (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ? number() : 1;
    if (out.shape.alpha < 1) fail("alpha must be >= 1");
    eat('*');
    expect('Q');
    expect('(');
    expect('n');
    expect('/');
    out.shape.beta = number();
    if (out.shape.beta < 2) fail("beta must be >= 2");
    expect(')');
    std::vector<Term> plain;
    while (eat('+')) {
      Product mult;
      if (starts_factor()) mult = term();
      if (const auto prim = peek_primitive()) {
        pos_ += prim->second;
        out.shape.calls.push_back(call(prim->first, mult, out.shape.beta));
      } else {
        if (!mult.any) fail("expected a term or primitive call");
        if (mult.b < 0) fail("B may only appear in a denominator");
        Term t;
        t.coef = {mult.p, mult.m, mult.b};
        t.l = mult.l;
        t.m = mult.lg;
        plain.push_back(t);
      }
    }
    out.terms = BoundExpr(std::move(plain));
    if (eat(';')) {
      expect('D');
      expect('(');
      expect('n');
      expect(')');
      expect('=');
      out.span = bound_sum();
    }
    if (!at_end()) fail("trailing input");
    return out;
  }

 private:
  ShapeCall call(Primitive prim, const Product& mult, std::int64_t beta) {
    if (mult.p != 0 || mult.m != 0 || mult.b != 0) fail("call multipliers may only use n and log n");
    if (!mult.l.is_rational() || mult.l.rational_part().denominator() != 1 || mult.lg.denominator() != 1) {
      fail("call multipliers need integer powers");
    }
    ShapeCall c;
    c.primitive = prim;
    c.coef = mult.num;
    c.n_power = static_cast<int>(mult.l.rational_part().numerator());
    c.log_power = static_cast<int>(mult.lg.numerator());
    expect('(');
    expect('n');
    if (eat('/')) {
      if (number() != beta) fail("call argument must be n/" + std::to_string(beta));
      c.arg = {CallArg::Kind::divide, 1};
    } else if (eat('^')) {
      c.arg = {CallArg::Kind::power, rational_power()};
    } else {
      c.arg = {CallArg::Kind::power, 1};
    }
    expect(')');
    return c;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

BoundExpr BoundExpr::parse(std::string_view text) {
  Parser p(text);
  BoundExpr e = p.bound_sum();
  if (!p.at_end()) p.fail("trailing input");
  return e;
}

ParsedRecurrence parse_recurrence(std::string_view text) { return Parser(text).recurrence(); }

}  // namespace steal_lab
