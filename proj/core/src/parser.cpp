#include "eds/expr.hpp"

#include <cctype>
#include <string>

namespace eds {

namespace {

struct Token {
  enum Kind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Kind kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { advance(); }

  const Token& peek() const { return current_; }

  Token take() {
    Token t = current_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::size_t start = pos_;
    if (pos_ >= text_.size()) {
      current_ = {Token::End, "", start};
      return;
    }
    char c = text_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      current_ = {Token::Number, std::string(text_.substr(start, pos_ - start)), start};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      current_ = {Token::Ident, std::string(text_.substr(start, pos_ - start)), start};
      return;
    }
    ++pos_;
    switch (c) {
      case '+': current_ = {Token::Plus, "+", start}; return;
      case '-': current_ = {Token::Minus, "-", start}; return;
      case '*': current_ = {Token::Star, "*", start}; return;
      case '/': current_ = {Token::Slash, "/", start}; return;
      case '^': current_ = {Token::Caret, "^", start}; return;
      case '(': current_ = {Token::LParen, "(", start}; return;
      case ')': current_ = {Token::RParen, ")", start}; return;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  Token current_;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : lex_(text) {}

  Expr parse() {
    Expr e = sum();
    const Token& t = lex_.peek();
    if (t.kind != Token::End)
      throw ParseError("unexpected trailing input '" + t.text + "'", t.pos);
    return e;
  }

 private:
  Expr sum() {
    Expr e = product();
    while (true) {
      Token::Kind k = lex_.peek().kind;
      if (k == Token::Plus) {
        lex_.take();
        e = e + product();
      } else if (k == Token::Minus) {
        lex_.take();
        e = e - product();
      } else {
        return e;
      }
    }
  }

  Expr product() {
    Expr e = unary();
    while (true) {
      Token::Kind k = lex_.peek().kind;
      if (k == Token::Star) {
        lex_.take();
        e = e * unary();
      } else if (k == Token::Slash) {
        Token t = lex_.take();
        Expr rhs = unary();
        if (rhs.is_zero()) throw DomainError("division by zero in expression");
        e = e / rhs;
      } else {
        return e;
      }
    }
  }

  Expr unary() {
    if (lex_.peek().kind == Token::Minus) {
      lex_.take();
      return -unary();
    }
    return power();
  }

  Expr power() {
    Expr base = atom();
    if (lex_.peek().kind == Token::Caret) {
      lex_.take();
      Token t = lex_.peek();
      if (t.kind != Token::Number)
        throw ParseError("exponent must be a nonnegative integer literal", t.pos);
      lex_.take();
      unsigned long e = 0;
      try {
        e = std::stoul(t.text);
      } catch (const std::exception&) {
        throw ParseError("exponent out of range", t.pos);
      }
      if (e > 4096) throw ParseError("exponent too large", t.pos);
      return pow(base, static_cast<unsigned>(e));
    }
    return base;
  }

  Expr atom() {
    Token t = lex_.take();
    switch (t.kind) {
      case Token::Number:
        return Expr(Rat(Int(t.text)));
      case Token::Ident:
        return Expr::variable(t.text);
      case Token::LParen: {
        Expr e = sum();
        Token close = lex_.take();
        if (close.kind != Token::RParen)
          throw ParseError("expected ')'", close.pos);
        return e;
      }
      default:
        throw ParseError("expected a number, identifier, or '('", t.pos);
    }
  }

  Lexer lex_;
};

}  // namespace

Expr parse_expr(std::string_view text) { return Parser(text).parse(); }

}  // namespace eds
