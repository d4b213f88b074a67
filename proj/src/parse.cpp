#include "qbrst/parse.hpp"

#include <cctype>
#include <string>

namespace qbrst {

namespace {

struct Token {
  enum Kind { Number, Ident, Op, End } kind = End;
  std::string text;
  int line = 1;
  int column = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
    Token t;
    t.line = line_;
    t.column = column_;
    if (pos_ >= src_.size()) return t;
    char ch = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      t.kind = Token::Number;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        t.text += src_[pos_];
        advance();
      }
      return t;
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      t.kind = Token::Ident;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        t.text += src_[pos_];
        advance();
      }
      return t;
    }
    if (std::string_view("+-*/^()").find(ch) != std::string_view::npos) {
      t.kind = Token::Op;
      t.text = std::string(1, ch);
      advance();
      return t;
    }
    throw ParseError(std::string("unexpected character '") + ch + "'", line_, column_);
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  Parser(std::string_view src, AlphabetPtr alphabet, const ParameterSet& params)
      : lex_(src), alphabet_(std::move(alphabet)), params_(params) {
    cur_ = lex_.next();
  }

  Poly parse_all() {
    if (cur_.kind == Token::End) throw ParseError("empty expression", cur_.line, cur_.column);
    Poly p = expr();
    if (cur_.kind != Token::End) fail("unexpected '" + cur_.text + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, cur_.line, cur_.column);
  }
  bool is_op(char c) const { return cur_.kind == Token::Op && cur_.text[0] == c; }
  void take() { cur_ = lex_.next(); }

  Poly expr() {
    Poly acc(alphabet_);
    bool neg = false;
    if (is_op('+') || is_op('-')) {
      neg = is_op('-');
      take();
    }
    acc = term();
    if (neg) acc = -acc;
    while (is_op('+') || is_op('-')) {
      bool minus = is_op('-');
      take();
      Poly t = term();
      acc = minus ? acc - t : acc + t;
    }
    return acc;
  }

  Poly term() {
    Poly acc = unary();
    while (is_op('*') || is_op('/')) {
      bool div = is_op('/');
      int line = cur_.line;
      int col = cur_.column;
      take();
      Poly rhs = unary();
      if (div) {
        Scalar d = as_scalar(rhs, line, col);
        if (d.is_zero()) throw ParseError("division by zero", line, col);
        acc = acc * d.inverse();
      } else {
        acc = acc * rhs;
      }
    }
    return acc;
  }

  Poly unary() {
    if (is_op('-')) {
      take();
      return -unary();
    }
    return power();
  }

  Poly power() {
    Poly base = atom();
    if (is_op('^')) {
      take();
      if (cur_.kind != Token::Number) fail("expected integer exponent");
      unsigned long k = std::stoul(cur_.text);
      if (k < 1) fail("exponent must be >= 1");
      take();
      Poly r = base;
      for (unsigned long i = 1; i < k; ++i) r = r * base;
      return r;
    }
    return base;
  }

  Poly atom() {
    if (cur_.kind == Token::Number) {
      Rational r(cur_.text);
      take();
      return Poly::constant(alphabet_, Scalar(r));
    }
    if (cur_.kind == Token::Ident) {
      std::string name = cur_.text;
      if (auto l = alphabet_->find(name)) {
        take();
        return Poly::monomial(alphabet_, Word{*l});
      }
      if (params_.contains(name)) {
        take();
        return Poly::constant(alphabet_, Scalar::parameter(name));
      }
      fail("unknown identifier '" + name + "'");
    }
    if (is_op('(')) {
      take();
      Poly p = expr();
      if (!is_op(')')) fail("expected ')'");
      take();
      return p;
    }
    if (cur_.kind == Token::End) fail("unexpected end of expression");
    fail("unexpected '" + cur_.text + "'");
  }

  static Scalar as_scalar(const Poly& p, int line, int col) {
    if (p.is_zero()) return Scalar();
    if (p.terms().size() != 1 || !p.terms().begin()->first.empty()) {
      throw ParseError("divisor must not contain generators", line, col);
    }
    return p.terms().begin()->second;
  }

  Lexer lex_;
  Token cur_;
  AlphabetPtr alphabet_;
  const ParameterSet& params_;
};

}  // namespace

Poly parse_expression(std::string_view text, const AlphabetPtr& alphabet,
                      const ParameterSet& parameters) {
  return Parser(text, alphabet, parameters).parse_all();
}

Scalar parse_scalar(std::string_view text, const ParameterSet& parameters) {
  static const auto empty = std::make_shared<const Alphabet>(std::vector<GeneratorInfo>{});
  Poly p = Parser(text, empty, parameters).parse_all();
  if (p.is_zero()) return Scalar();
  return p.terms().begin()->second;
}

Word parse_word(std::string_view text, const AlphabetPtr& alphabet) {
  Poly p = parse_expression(text, alphabet, ParameterSet{});
  if (p.terms().size() != 1 || !p.terms().begin()->second.is_one()) {
    throw ParseError("expected a single word, got '" + std::string(text) + "'", 1, 1);
  }
  return p.terms().begin()->first;
}

}  // namespace qbrst
