#ifndef FROBSPLIT_PARSE_HPP
#define FROBSPLIT_PARSE_HPP

#include <cctype>
#include <string>
#include <vector>

#include "frobsplit/poly.hpp"

namespace frobsplit {

// Recursive-descent parser for the polynomial/element syntax:
//   3*t*x1^2*x2 - x3^(1/3)      (t+1)/(t^2+1)      w^2+w
// Exponents are integers or fractions (a/b) with b a power of p; the base-b
// form (a/p^e) is also accepted. Juxtaposition multiplies. '/' divides by a
// constant. '#' starts a comment through end of line.

namespace detail {

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  [[noreturn]] void fail(const std::string& msg) const {
    throw FrobError("parse error at line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg);
  }

  void skip_ws() {
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  bool eof() {
    skip_ws();
    return pos >= src.size();
  }

  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  long long number() {
    skip_ws();
    if (pos >= src.size() || !std::isdigit(static_cast<unsigned char>(src[pos]))) fail("expected a number");
    long long v = 0;
    while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
      v = v * 10 + (src[pos] - '0');
      if (v > (1LL << 60)) fail("number too large");
      advance();
    }
    return v;
  }

  std::string ident() {
    skip_ws();
    if (pos >= src.size() || !std::isalpha(static_cast<unsigned char>(src[pos]))) fail("expected an identifier");
    std::string s;
    while (pos < src.size() &&
           (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
      s += src[pos];
      advance();
    }
    return s;
  }
};

struct ExprParser {
  Lexer lex;
  FieldSpecPtr spec;
  const std::vector<std::string>& varnames;

  ExprParser(const std::string& s, FieldSpecPtr sp, const std::vector<std::string>& vn)
      : lex(s), spec(std::move(sp)), varnames(vn) {}

  int nvars() const { return static_cast<int>(varnames.size()); }

  FracPolynomial parse() {
    FracPolynomial f = expr();
    if (!lex.eof()) lex.fail("unexpected trailing input");
    return f;
  }

  FracPolynomial expr() {
    bool neg = false;
    if (lex.accept('-'))
      neg = true;
    else
      lex.accept('+');
    FracPolynomial acc = term();
    if (neg) acc = -acc;
    for (;;) {
      if (lex.accept('+')) {
        acc = acc + term();
      } else if (lex.accept('-')) {
        acc = acc - term();
      } else {
        break;
      }
    }
    return acc;
  }

  static bool starts_atom(char c) {
    return c == '(' || std::isdigit(static_cast<unsigned char>(c)) || std::isalpha(static_cast<unsigned char>(c));
  }

  FracPolynomial term() {
    FracPolynomial acc = factor();
    for (;;) {
      if (lex.accept('*')) {
        acc = acc * factor();
      } else if (lex.accept('/')) {
        FracPolynomial d = factor();
        if (!d.is_constant()) lex.fail("division by a non-constant polynomial");
        acc = d.constant_value().inverse() * acc;
      } else if (starts_atom(lex.peek())) {
        acc = acc * factor();  // juxtaposition
      } else {
        break;
      }
    }
    return acc;
  }

  struct Exponent {
    long long num = 1;
    int root_level = 0;  // exponent is num / p^root_level
  };

  Exponent exponent() {
    Exponent e;
    if (lex.accept('(')) {
      bool neg = lex.accept('-');
      e.num = lex.number();
      if (neg) e.num = -e.num;
      if (lex.accept('/')) {
        long long den = lex.number();
        if (lex.accept('^')) {
          long long ex = lex.number();
          long long base = den, v = 1;
          for (long long i = 0; i < ex; ++i) {
            v *= base;
            if (v > (1LL << 40)) lex.fail("exponent denominator too large");
          }
          den = v;
        }
        if (den <= 0) lex.fail("exponent denominator must be positive");
        long long g = std::gcd(std::abs(e.num), den);
        e.num /= g;
        den /= g;
        int lvl = 0;
        long long d = den;
        while (d % spec->p == 0) {
          d /= spec->p;
          ++lvl;
        }
        if (d != 1) lex.fail("exponent denominator must be a power of " + std::to_string(spec->p));
        e.root_level = lvl;
      }
      lex.expect(')');
    } else {
      bool neg = lex.accept('-');
      e.num = lex.number();
      if (neg) e.num = -e.num;
    }
    return e;
  }

  FracPolynomial factor() {
    FracPolynomial base = atom();
    if (!lex.accept('^')) return base;
    Exponent e = exponent();
    if (e.root_level == 0 && e.num >= 0) return base.pow(e.num);
    if (base.is_constant()) {
      FieldElement c = base.constant_value();
      if (e.root_level > 0) c = c.pth_root_iter(e.root_level);
      if (e.num < 0) c = c.inverse().pow(-e.num);
      else c = c.pow(e.num);
      return FracPolynomial::constant(spec, nvars(), c);
    }
    if (e.num < 0) lex.fail("negative exponent on a non-constant base");
    // fractional exponent: base must be a single monomial with unit coefficient
    if (base.term_count() != 1 || !base.terms().begin()->second.is_one() || base.level() != 0)
      lex.fail("fractional exponent requires a plain variable or monomial base");
    ExpVec ev = base.terms().begin()->first;
    for (int& x : ev) {
      long long scaled = static_cast<long long>(x) * e.num;
      if (scaled > (1LL << 30)) lex.fail("exponent too large");
      x = static_cast<int>(scaled);
    }
    return FracPolynomial::monomial(spec, nvars(), FieldElement::one(spec), std::move(ev), e.root_level);
  }

  FracPolynomial atom() {
    char c = lex.peek();
    if (c == '(') {
      lex.expect('(');
      FracPolynomial e = expr();
      lex.expect(')');
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = lex.number();
      return FracPolynomial::constant(spec, nvars(), FieldElement::from_int(spec, v));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      int l = lex.line, co = lex.col;
      std::string name = lex.ident();
      for (int j = 0; j < nvars(); ++j)
        if (varnames[j] == name) return FracPolynomial::variable(spec, nvars(), j);
      if (name == "t" && spec->is_perfection())
        return FracPolynomial::constant(spec, nvars(), FieldElement::t(spec));
      if (name == "w" && spec->is_extension())
        return FracPolynomial::constant(spec, nvars(), FieldElement::generator(spec));
      throw FrobError("parse error at line " + std::to_string(l) + ", col " + std::to_string(co) +
                      ": unknown symbol '" + name + "'");
    }
    lex.fail("expected a number, symbol, or '('");
  }
};

}  // namespace detail

inline FracPolynomial parse_polynomial(const std::string& text, const FieldSpecPtr& spec,
                                       const std::vector<std::string>& varnames) {
  detail::ExprParser p(text, spec, varnames);
  return p.parse();
}

inline FracPolynomial parse_polynomial(const std::string& text, const FieldSpecPtr& spec, int nvars) {
  auto names = default_varnames(nvars);
  return parse_polynomial(text, spec, names);
}

inline FieldElement parse_element(const std::string& text, const FieldSpecPtr& spec) {
  static const std::vector<std::string> none;
  FracPolynomial f = parse_polynomial(text, spec, none);
  return f.constant_value();
}

}  // namespace frobsplit

#endif  // FROBSPLIT_PARSE_HPP
