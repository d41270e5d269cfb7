#pragma once

// Text form of polynomials.
//
//   expr    := ['+'|'-'] term { ('+'|'-') term }
//   term    := power { ['*'] power }
//   power   := primary [ '^' digits ]
//   primary := digits [ '/' digits ] | variable | '(' expr ')'
//
// Variables are x, y or, equivalently, u, v (u -> x, v -> y). The two naming
// schemes may not be mixed within one expression.

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include "njac/bipoly.hpp"
#include "njac/errors.hpp"

namespace njac {

namespace detail {

class PolyParser {
 public:
  explicit PolyParser(std::string_view text) : s_(text) {}

  Polynomial parse() {
    skip_ws();
    if (pos_ >= s_.size()) fail(ErrorKind::SyntaxError, "empty expression");
    Polynomial p = parse_expr();
    skip_ws();
    if (pos_ < s_.size()) fail(ErrorKind::SyntaxError, std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  static constexpr long kMaxExponent = 4096;

  [[noreturn]] void fail(ErrorKind kind, const std::string& what) const { throw SyntaxError(kind, pos_, what); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Polynomial parse_expr() {
    Polynomial acc;
    char c = peek();
    bool negate = false;
    if (c == '+' || c == '-') {
      negate = (c == '-');
      ++pos_;
    }
    Polynomial t = parse_term();
    acc = negate ? -t : t;
    while (true) {
      c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      if (c == '+')
        acc += parse_term();
      else
        acc -= parse_term();
    }
    return acc;
  }

  bool starts_primary(char c) const {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || std::isalpha(static_cast<unsigned char>(c));
  }

  Polynomial parse_term() {
    Polynomial acc = parse_power();
    while (true) {
      char c = peek();
      if (c == '*') {
        ++pos_;
        acc *= parse_power();
      } else if (c != '\0' && starts_primary(c)) {
        acc *= parse_power();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial parse_power() {
    Polynomial base = parse_primary();
    if (peek() == '^') {
      ++pos_;
      char c = peek();
      if (c == '-') fail(ErrorKind::NegativeExponent, "negative exponent");
      if (!std::isdigit(static_cast<unsigned char>(c))) fail(ErrorKind::SyntaxError, "expected exponent");
      std::string digits = read_digits();
      if (digits.size() > 6 || std::stol(digits) > kMaxExponent) fail(ErrorKind::SyntaxError, "exponent too large");
      return base.pow(static_cast<unsigned>(std::stol(digits)));
    }
    return base;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }

  Polynomial parse_primary() {
    char c = peek();
    if (c == '\0') fail(ErrorKind::SyntaxError, "unexpected end of input");
    if (std::isdigit(static_cast<unsigned char>(c))) {
      mpz_class num(read_digits());
      mpz_class den(1);
      // A '/' directly followed by digits makes a rational literal.
      std::size_t save = pos_;
      if (peek() == '/') {
        ++pos_;
        if (!std::isdigit(static_cast<unsigned char>(peek()))) fail(ErrorKind::SyntaxError, "expected denominator");
        den = mpz_class(read_digits());
        if (den == 0) fail(ErrorKind::SyntaxError, "zero denominator");
      } else {
        pos_ = save;
      }
      Rational q(num, den);
      q.canonicalize();
      return Polynomial::monomial(q, 0, 0);
    }
    if (c == '(') {
      ++pos_;
      Polynomial inner = parse_expr();
      if (peek() != ')') fail(ErrorKind::SyntaxError, "expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      ++pos_;
      switch (c) {
        case 'x': return variable(0, false);
        case 'y': return variable(1, false);
        case 'u': return variable(0, true);
        case 'v': return variable(1, true);
        case 't': --pos_; fail(ErrorKind::SyntaxError, "the pencil parameter t is not accepted in input");
        default: --pos_; fail(ErrorKind::SyntaxError, std::string("unknown variable '") + c + "'");
      }
    }
    fail(ErrorKind::SyntaxError, std::string("unexpected '") + c + "'");
  }

  Polynomial variable(int which, bool source_names) {
    int scheme = source_names ? 2 : 1;
    if (scheme_ != 0 && scheme_ != scheme) {
      --pos_;
      fail(ErrorKind::SyntaxError, "variables x,y and u,v may not be mixed");
    }
    scheme_ = scheme;
    return which == 0 ? Polynomial::x() : Polynomial::y();
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  int scheme_ = 0;
};

inline void append_coefficient_term(std::ostringstream& os, const Rational& c, const Exponent& e, bool first,
                                    const char* vx, const char* vy) {
  const bool neg = sgn(c) < 0;
  Rational a = abs(c);
  if (neg)
    os << '-';
  else if (!first)
    os << '+';
  const bool unit = (a == 1);
  const bool constant = (e.i == 0 && e.j == 0);
  bool need_star = false;
  if (!unit || constant) {
    os << a.get_str();
    need_star = true;
  }
  auto var = [&](const char* name, int k) {
    if (k == 0) return;
    if (need_star) os << '*';
    os << name;
    if (k > 1) os << '^' << k;
    need_star = true;
  };
  var(vx, e.i);
  var(vy, e.j);
}

}  // namespace detail

/// Parses an expression in x, y (or u, v).
inline Polynomial parse_polynomial(std::string_view text) { return detail::PolyParser(text).parse(); }

/// Canonical text: terms in graded order by (i + j, i), no spaces.
inline std::string to_string(const Polynomial& p, const char* vx = "x", const char* vy = "y") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    detail::append_coefficient_term(os, c, e, first, vx, vy);
    first = false;
  }
  return os.str();
}

inline std::string to_string(const QPoly& p, const char* var = "t") {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int k = 0; k <= p.degree(); ++k) {
    const Rational& c = p.coeffs()[static_cast<std::size_t>(k)];
    if (sgn(c) == 0) continue;
    detail::append_coefficient_term(os, c, Exponent{k, 0}, first, var, "");
    first = false;
  }
  return os.str();
}

}  // namespace njac
