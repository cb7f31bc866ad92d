#include "fracwave/parse.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "fracwave/error.hpp"

namespace fracwave {

ParseError::ParseError(std::size_t offset, std::vector<std::string> expected, const std::string& message)
    : Error(message + " at offset " + std::to_string(offset)), offset_(offset), expected_(std::move(expected)) {}

}  // namespace fracwave

namespace fracwave::symexpr {

namespace {

const std::vector<std::string> kOperandStart = {"number", "symbol", "function", "'('", "'-'"};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Expr parse_all() {
    skip_ws();
    Expr e = expr();
    skip_ws();
    if (pos_ != text_.size()) fail({"operator", "end of input"}, "unexpected character");
    return e;
  }

 private:
  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& what) const {
    throw ParseError(pos_, std::move(expected), what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (peek(c)) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail({std::string("'") + c + "'"}, std::string("expected '") + c + "'");
  }

  Expr expr() {
    std::vector<Expr> terms{term()};
    for (;;) {
      if (accept('+')) {
        terms.push_back(term());
      } else if (accept('-')) {
        terms.push_back(-term());
      } else {
        break;
      }
    }
    return make_sum(std::move(terms));
  }

  Expr term() {
    Expr acc = factor();
    for (;;) {
      if (accept('*')) {
        acc = acc * factor();
      } else if (peek('/')) {
        const std::size_t at = pos_;
        ++pos_;
        Expr d = factor();
        if (d.is_zero()) throw ParseError(at, {}, "division by literal zero");
        acc = acc / d;
      } else {
        break;
      }
    }
    return acc;
  }

  Expr factor() {
    Expr b = base();
    if (accept('^')) {
      skip_ws();
      bool neg = false;
      if (accept('(')) {
        neg = accept('-');
        const std::int64_t n = integer();
        expect(')');
        return pow(b, neg ? -n : n);
      }
      neg = accept('-');
      const std::int64_t n = integer();
      return pow(b, neg ? -n : n);
    }
    return b;
  }

  std::int64_t integer() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail({"integer"}, "expected integer exponent");
    if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
      fail({"integer"}, "exponent must be an integer");
    }
    const std::string digits(text_.substr(start, pos_ - start));
    if (digits.size() > 9) throw ParseError(start, {"integer"}, "exponent too large");
    return std::stoll(digits);
  }

  Expr base() {
    skip_ws();
    if (pos_ >= text_.size()) fail(kOperandStart, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      expect(')');
      return e;
    }
    if (c == '-') {
      ++pos_;
      return -factor();
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    fail(kOperandStart, "unexpected character");
  }

  Expr number() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
      ++pos_;
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t look = pos_ + 1;
      if (look < text_.size() && (text_[look] == '+' || text_[look] == '-')) ++look;
      if (look < text_.size() && std::isdigit(static_cast<unsigned char>(text_[look]))) {
        pos_ = look;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      }
    }
    try {
      return Expr(Rational::from_decimal(text_.substr(start, pos_ - start)));
    } catch (const Error&) {
      throw ParseError(start, {"number"}, "malformed number");
    }
  }

  std::string name() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail({"symbol"}, "expected symbol");
    return std::string(text_.substr(start, pos_ - start));
  }

  Expr identifier() {
    const std::size_t start = pos_;
    std::string id = name();
    if (!peek('(')) return Expr::symbol(std::move(id));
    ++pos_;
    if (id == "D") {
      Expr operand = expr();
      expect(',');
      std::string var = name();
      expect(',');
      const std::int64_t order = integer();
      expect(')');
      if (order < 1) throw ParseError(start, {}, "derivative order must be positive");
      return derivative_marker(operand, std::move(var), static_cast<int>(order));
    }
    const auto f = func_from_name(id);
    if (!f) throw ParseError(start, {"exp", "ln", "sqrt", "tanh", "coth", "tan", "cot", "gamma", "sign", "abs"},
                             "unknown function '" + id + "'");
    std::vector<Expr> args{expr()};
    while (accept(',')) args.push_back(expr());
    expect(')');
    if (args.size() != 1) throw ParseError(start, {}, "function '" + id + "' takes one argument");
    return apply(*f, std::move(args));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::string_view text) { return Parser(text).parse_all(); }

}  // namespace fracwave::symexpr
