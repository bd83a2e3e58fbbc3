#pragma once

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <string>
#include <string_view>

#include "strl/error.hpp"
#include "strl/stl/formula.hpp"

namespace strl::stl {

// Grammar, loosest binding first:
//
//   disj  := conj ("|" conj)*
//   conj  := until ("&" until)*
//   until := unary ("U[" int "," int ")" unary)*
//   unary := "!" unary | "F[" int "," int ")" unary | "G[" int "," int ")" unary
//          | atom
//   atom  := "true" | "in(" ident ")" | var ("<" | ">") number | "(" disj ")"
//
// Variables x, y, z name workspace coordinates 0, 1, 2.
class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Formula parse() {
    Formula f = disjunction();
    skip_space();
    if (!at_end()) fail("unexpected trailing input '" + std::string(1, peek()) + "'");
    return f;
  }

 private:
  Formula disjunction() {
    Formula f = conjunction();
    while (accept('|')) f = Formula::disjunction(f, conjunction());
    return f;
  }

  Formula conjunction() {
    Formula f = until();
    while (accept('&')) f = Formula::conjunction(f, until());
    return f;
  }

  Formula until() {
    Formula f = unary();
    while (true) {
      skip_space();
      if (!lookahead_keyword("U")) break;
      auto [line, column] = location();
      consume_word();
      Interval iv = interval(line, column);
      f = Formula::until(iv, f, unary());
    }
    return f;
  }

  Formula unary() {
    skip_space();
    if (accept('!')) return Formula::negation(unary());
    if (lookahead_keyword("F") || lookahead_keyword("G")) {
      auto [line, column] = location();
      const bool eventually = consume_word() == "F";
      Interval iv = interval(line, column);
      Formula child = unary();
      return eventually ? Formula::eventually(iv, child) : Formula::always(iv, child);
    }
    return atom();
  }

  Formula atom() {
    skip_space();
    if (accept('(')) {
      Formula f = disjunction();
      expect(')');
      return f;
    }
    if (at_end()) fail("unexpected end of formula");
    if (!is_ident_start(peek())) fail("unexpected character '" + std::string(1, peek()) + "'");

    auto [line, column] = location();
    std::string word = consume_word();
    if (word == "true") return Formula::truth();
    if (word == "in") {
      expect('(');
      skip_space();
      if (at_end() || !is_ident_start(peek())) fail("expected region name");
      std::string name = consume_word();
      expect(')');
      return Formula::region(name);
    }

    std::size_t axis = 0;
    if (word == "x") {
      axis = 0;
    } else if (word == "y") {
      axis = 1;
    } else if (word == "z") {
      axis = 2;
    } else {
      throw ParseError("unknown variable '" + word + "'", line, column);
    }
    skip_space();
    Comparison cmp;
    if (accept('<')) {
      cmp = Comparison::less;
    } else if (accept('>')) {
      cmp = Comparison::greater;
    } else {
      fail("expected '<' or '>' after variable");
    }
    return Formula::predicate(axis, cmp, number());
  }

  Interval interval(std::size_t line, std::size_t column) {
    expect('[');
    int lo = integer();
    expect(',');
    int hi = integer();
    expect(')');
    if (lo >= hi) {
      throw ParseError("interval requires a < b, got [" + std::to_string(lo) + "," +
                           std::to_string(hi) + ")",
                       line, column);
    }
    return Interval{lo, hi};
  }

  int integer() {
    skip_space();
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) advance();
    if (start == pos_) fail("expected nonnegative integer");
    if (pos_ - start > 9) fail("interval bound too large");
    return std::stoi(std::string(text_.substr(start, pos_ - start)));
  }

  double number() {
    skip_space();
    std::string buf(text_.substr(pos_));
    char* end = nullptr;
    double v = std::strtod(buf.c_str(), &end);
    std::size_t used = static_cast<std::size_t>(end - buf.c_str());
    if (used == 0) fail("expected number");
    if (!std::isfinite(v)) fail("threshold must be finite");
    for (std::size_t i = 0; i < used; ++i) advance();
    return v;
  }

  bool lookahead_keyword(std::string_view kw) const {
    if (text_.substr(pos_, kw.size()) != kw) return false;
    std::size_t next = pos_ + kw.size();
    return next < text_.size() && text_[next] == '[';
  }

  std::string consume_word() {
    std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) {
      advance();
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  static bool is_ident_start(char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
  }

  bool accept(char c) {
    skip_space();
    if (!at_end() && peek() == c) {
      advance();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) advance();
  }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::pair<std::size_t, std::size_t> location() const { return {line_, column_}; }

  [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, line_, column_); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

inline Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

}  // namespace strl::stl
