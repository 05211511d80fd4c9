#include "parse.hpp"

#include <cctype>

#include "conifold/errors.hpp"

namespace conifold::cli {

namespace {

struct Gauss {
  Rational re, im;
};

Gauss operator+(const Gauss& a, const Gauss& b) { return {a.re + b.re, a.im + b.im}; }
Gauss operator-(const Gauss& a, const Gauss& b) { return {a.re - b.re, a.im - b.im}; }
Gauss operator*(const Gauss& a, const Gauss& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
Gauss operator/(const Gauss& a, const Gauss& b) {
  Rational d = b.re * b.re + b.im * b.im;
  if (d == 0) throw DomainError("division by zero in expression");
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

const Rational& pi_rational() {
  static const Rational pi(BigInt("3141592653589793238462643383279502884197"),
                           BigInt("1000000000000000000000000000000000000000"));
  return pi;
}

class Parser {
public:
  explicit Parser(const std::string& s) : s_(s) {}

  Gauss parse() {
    Gauss v = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return v;
  }

private:
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("cannot parse '" + s_ + "': " + what + " at position " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool at_pi() const {
    return s_.compare(pos_, 2, "\xCF\x80") == 0 || s_.compare(pos_, 2, "pi") == 0;
  }

  bool starts_atom() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || c == 'i' || at_pi();
  }

  Gauss expr() {
    Gauss v = term();
    for (;;) {
      if (eat('+')) v = v + term();
      else if (eat('-')) v = v - term();
      else return v;
    }
  }

  Gauss term() {
    Gauss v = unary();
    for (;;) {
      if (eat('*')) v = v * unary();
      else if (eat('/')) v = v / unary();
      else if (starts_atom()) v = v * power();  // implicit product: 2π, 0.4i
      else return v;
    }
  }

  Gauss unary() {
    if (eat('-')) return Gauss{0, 0} - unary();
    if (eat('+')) return unary();
    return power();
  }

  Gauss power() {
    Gauss base = atom();
    if (!eat('^')) return base;
    bool neg = eat('-');
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("integer exponent expected");
    int e = std::stoi(s_.substr(start, pos_ - start));
    Gauss out{1, 0};
    for (int k = 0; k < e; ++k) out = out * base;
    return neg ? Gauss{1, 0} / out : out;
  }

  Gauss atom() {
    skip();
    if (pos_ >= s_.size()) fail("operand expected");
    if (eat('(')) {
      Gauss v = expr();
      if (!eat(')')) fail("')' expected");
      return v;
    }
    if (at_pi()) {
      pos_ += 2;
      return {pi_rational(), 0};
    }
    if (s_[pos_] == 'i') {
      ++pos_;
      return {0, 1};
    }
    return number();
  }

  Gauss number() {
    BigInt mant = 0;
    long scale = 0;
    bool digits = false, dot = false;
    while (pos_ < s_.size()) {
      char c = s_[pos_];
      if (std::isdigit(static_cast<unsigned char>(c))) {
        mant = mant * 10 + (c - '0');
        if (dot) --scale;
        digits = true;
      } else if (c == '.' && !dot) {
        dot = true;
      } else {
        break;
      }
      ++pos_;
    }
    if (!digits) fail("number expected");
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
      int sign = 1;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) sign = s_[pos_++] == '-' ? -1 : 1;
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("exponent digits expected");
      scale += sign * std::stol(s_.substr(start, pos_ - start));
    }
    if (scale > 400 || scale < -400) fail("exponent out of range");
    BigInt p = boost::multiprecision::pow(BigInt(10), static_cast<unsigned>(scale < 0 ? -scale : scale));
    Rational v = scale < 0 ? Rational(mant, p) : Rational(mant * p);
    return {v, 0};
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

cplx parse_complex(const std::string& text) {
  Gauss g = Parser(text).parse();
  return {static_cast<double>(g.re), static_cast<double>(g.im)};
}

cquad parse_complex_quad(const std::string& text) {
  Gauss g = Parser(text).parse();
  return {rational_to<quad>(g.re), rational_to<quad>(g.im)};
}

double parse_real(const std::string& text) {
  cplx z = parse_complex(text);
  if (z.imag() != 0) throw DomainError("real value expected, got '" + text + "'");
  return z.real();
}

std::vector<cplx> parse_complex_list(const std::string& text) {
  std::vector<cplx> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = text.find(',', start);
    out.push_back(parse_complex(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::map<std::string, cplx> parse_assignments(const std::string& text) {
  std::map<std::string, cplx> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma - start);
    std::size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw DomainError("expected key=value, got '" + item + "'");
    out[item.substr(0, eq)] = parse_complex(item.substr(eq + 1));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace conifold::cli
