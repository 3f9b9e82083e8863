#include "fermat/expr.hpp"

#include <cctype>

#include "fermat/census.hpp"
#include "fermat/error.hpp"

namespace fermat {
namespace {

class Parser {
 public:
  Parser(const Tower& t, const std::string& s) : t_(t), s_(s) {}

  TowerElem parse() {
    TowerElem e = sum();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("element \"" + s_ + "\": " + msg + " at offset " + std::to_string(pos_));
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string digits() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return s_.substr(start, pos_ - start);
  }

  TowerElem sum() {
    TowerElem acc = product();
    for (;;) {
      if (accept('+')) {
        acc = t_.add(acc, product());
      } else if (accept('-')) {
        acc = t_.sub(acc, product());
      } else {
        return acc;
      }
    }
  }

  TowerElem product() {
    TowerElem acc = unary();
    for (;;) {
      if (accept('*')) {
        acc = t_.mul(acc, unary());
      } else if (accept('/')) {
        TowerElem d = unary();
        if (d.is_zero()) throw DivisionByZero("element \"" + s_ + "\": division by zero");
        acc = t_.div(acc, d);
      } else {
        return acc;
      }
    }
  }

  TowerElem unary() {
    if (accept('-')) return t_.neg(unary());
    if (accept('+')) return unary();
    return power();
  }

  TowerElem power() {
    TowerElem base = atom();
    if (!accept('^')) return base;
    const bool negative = accept('-');
    const std::string d = digits();
    if (d.size() > 6) fail("exponent too large");
    TowerElem r = t_.pow(base, std::stoull(d));
    if (negative) {
      if (r.is_zero()) throw DivisionByZero("element \"" + s_ + "\": zero to a negative power");
      r = t_.inv(r);
    }
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') fail("chained '^' needs parentheses");
    return r;
  }

  TowerElem atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      TowerElem e = sum();
      if (!accept(')')) fail("expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return t_.rational(Rational(Integer(digits())));
    }
    if (c == 'x' || c == 'y' || c == 'z') {
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
        fail("expected a level after '" + std::string(1, c) + "'");
      }
      const std::string d = digits();
      if (d.size() > 6) fail("level too large");
      const std::size_t i = std::stoul(d);
      if (i >= t_.depth()) fail(std::string(1, c) + d + " is beyond the tower");
      if (c == 'x') return t_.gen_x(i);
      if (c == 'y') return t_.gen_y(i);
      return z_element(t_, i);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  const Tower& t_;
  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

TowerElem parse_element(const Tower& tower, const std::string& text) {
  return Parser(tower, text).parse();
}

}  // namespace fermat
