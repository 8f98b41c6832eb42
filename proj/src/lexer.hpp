/*
 * Copyright 2026 the horsck authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Internal tokenizer shared by the scheme, automaton and printed-type parsers.

#ifndef HORSCK_LEXER_HPP
#define HORSCK_LEXER_HPP

#include <cctype>
#include <string>
#include <vector>

#include "horsck/syntax.hpp"

namespace horsck::detail {

struct Token {
  enum Type { Ident, Number, Symbol, End } type;
  std::string text;
  int line;
  int col;
};

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

inline std::vector<Token> tokenize(const std::string& text) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; k++) {
      if (text[i + k] == '\n') {
        line++;
        col = 1;
      } else {
        col++;
      }
    }
    i += n;
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    int tl = line, tc = col;
    if (ident_start(c)) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j])) j++;
      out.push_back({Token::Ident, text.substr(i, j - i), tl, tc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) j++;
      out.push_back({Token::Number, text.substr(i, j - i), tl, tc});
      advance(j - i);
      continue;
    }
    if (text.compare(i, 2, "->") == 0 || text.compare(i, 2, "/\\") == 0 ||
        text.compare(i, 2, "\\/") == 0) {
      out.push_back({Token::Symbol, text.substr(i, 2), tl, tc});
      advance(2);
      continue;
    }
    if (c == ':' || c == '(' || c == ')' || c == ',' || c == '[' || c == ']') {
      out.push_back({Token::Symbol, std::string(1, c), tl, tc});
      advance(1);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
  out.push_back({Token::End, "", line, col});
  return out;
}

struct Cursor {
  const std::vector<Token>& toks;
  size_t pos = 0;

  const Token& peek() const { return toks[pos]; }
  const Token& next() { return toks[pos++]; }
  bool at_end() const { return peek().type == Token::End; }

  bool try_symbol(const std::string& s) {
    if (peek().type == Token::Symbol && peek().text == s) {
      pos++;
      return true;
    }
    return false;
  }
  bool try_keyword(const std::string& s) {
    if (peek().type == Token::Ident && peek().text == s) {
      pos++;
      return true;
    }
    return false;
  }
  void expect_symbol(const std::string& s) {
    if (!try_symbol(s)) fail("expected '" + s + "'");
  }
  void expect_keyword(const std::string& s) {
    if (!try_keyword(s)) fail("expected '" + s + "'");
  }
  std::string expect_ident(const std::string& what) {
    if (peek().type != Token::Ident) fail("expected " + what);
    return next().text;
  }
  int expect_number(const std::string& what) {
    if (peek().type != Token::Number) fail("expected " + what);
    return std::stoi(next().text);
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.type == Token::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(msg + ", got " + got, t.line, t.col);
  }
};

}  // namespace horsck::detail

#endif  // HORSCK_LEXER_HPP
