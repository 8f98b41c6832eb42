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

#include "horsck/syntax.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "lexer.hpp"

namespace horsck {

ParseError::ParseError(const std::string& msg, int line_, int col_)
    : std::runtime_error("line " + std::to_string(line_) + ", col " + std::to_string(col_) +
                         ": " + msg),
      line(line_),
      col(col_) {}

// ---------------------------------------------------------------------------
// Kinds

Kind Kind::arrow(Kind arg, Kind rest) {
  std::vector<Kind> args;
  args.reserve(rest.args_.size() + 1);
  args.push_back(std::move(arg));
  for (auto& k : rest.args_) args.push_back(k);
  return Kind(std::move(args));
}

int Kind::order() const {
  int best = -1;
  for (const auto& a : args_) best = std::max(best, a.order());
  return best + 1;
}

Kind Kind::suffix(int n) const {
  if (n > arity()) throw KindError("kind suffix out of range");
  return Kind(std::vector<Kind>(args_.begin() + n, args_.end()));
}

std::string Kind::to_string() const {
  if (is_ground()) return "o";
  std::string out;
  for (const auto& a : args_) {
    if (a.is_ground()) {
      out += "o -> ";
    } else {
      out += "(" + a.to_string() + ") -> ";
    }
  }
  return out + "o";
}

bool Kind::operator==(const Kind& other) const {
  if (args_.size() != other.args_.size()) return false;
  for (size_t i = 0; i < args_.size(); i++)
    if (!(args_[i] == other.args_[i])) return false;
  return true;
}

bool Kind::operator<(const Kind& other) const {
  return std::lexicographical_compare(args_.begin(), args_.end(), other.args_.begin(),
                                      other.args_.end());
}

// ---------------------------------------------------------------------------
// Terms

TermPtr Term::var(std::string name) {
  return TermPtr(new Term(TermTag::Var, std::move(name), nullptr, nullptr));
}
TermPtr Term::nonterminal(std::string name) {
  return TermPtr(new Term(TermTag::NonTerminal, std::move(name), nullptr, nullptr));
}
TermPtr Term::terminal(std::string name) {
  return TermPtr(new Term(TermTag::Terminal, std::move(name), nullptr, nullptr));
}
TermPtr Term::app(TermPtr fun, TermPtr arg) {
  return TermPtr(new Term(TermTag::App, "", std::move(fun), std::move(arg)));
}

std::string Term::to_string() const {
  if (is_leaf()) return name_;
  std::string lhs = fun_->to_string();
  std::string rhs = arg_->to_string();
  if (arg_->tag() == TermTag::App) rhs = "(" + rhs + ")";
  return lhs + " " + rhs;
}

std::pair<TermPtr, std::vector<TermPtr>> spine(const TermPtr& term) {
  std::vector<TermPtr> args;
  TermPtr head = term;
  while (head->tag() == TermTag::App) {
    args.push_back(head->arg());
    head = head->fun();
  }
  std::reverse(args.begin(), args.end());
  return {head, args};
}

// ---------------------------------------------------------------------------
// Scheme helpers

int Scheme::order() const {
  int best = 0;
  for (const auto& [name, kind] : nonterminals) best = std::max(best, kind.order());
  return best;
}

Kind Scheme::terminal_kind(const std::string& name) const {
  auto it = terminals.find(name);
  if (it == terminals.end()) throw KindError("unknown terminal: " + name);
  return Kind(std::vector<Kind>(static_cast<size_t>(it->second), Kind::ground()));
}

Kind kind_of(const TermPtr& term, const std::map<std::string, Kind>& env) {
  if (term->is_leaf()) {
    auto it = env.find(term->name());
    if (it == env.end()) throw KindError("unbound name: " + term->name());
    return it->second;
  }
  Kind fun = kind_of(term->fun(), env);
  Kind arg = kind_of(term->arg(), env);
  if (fun.is_ground())
    throw KindError("kind mismatch: ground term applied in " + term->to_string());
  if (!(fun.args()[0] == arg))
    throw KindError("kind mismatch: expected argument of kind " + fun.args()[0].to_string() +
                    " but got " + arg.to_string() + " in " + term->to_string());
  return fun.suffix(1);
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

Kind parse_kind_atom(Cursor& cur);

Kind parse_kind_expr(Cursor& cur) {
  Kind lhs = parse_kind_atom(cur);
  if (cur.try_symbol("->")) return Kind::arrow(lhs, parse_kind_expr(cur));
  return lhs;
}

Kind parse_kind_atom(Cursor& cur) {
  if (cur.try_symbol("(")) {
    Kind k = parse_kind_expr(cur);
    cur.expect_symbol(")");
    return k;
  }
  if (cur.peek().type == Token::Ident && cur.peek().text == "o") {
    cur.next();
    return Kind::ground();
  }
  cur.fail("expected kind");
}

}  // namespace detail

using detail::Cursor;
using detail::Token;

// ---------------------------------------------------------------------------
// Scheme parsing

namespace {

const char* kSchemeKeywords[] = {"terminals", "nonterminals", "start", "rules"};

bool is_scheme_keyword(const std::string& s) {
  for (const char* k : kSchemeKeywords)
    if (s == k) return true;
  return false;
}

TermPtr classify(const std::string& name, const Scheme& scheme,
                 const std::vector<std::string>& params, const Token& tok) {
  if (std::find(params.begin(), params.end(), name) != params.end()) return Term::var(name);
  if (scheme.nonterminals.count(name)) return Term::nonterminal(name);
  if (scheme.terminals.count(name)) return Term::terminal(name);
  throw ParseError("unknown symbol: " + name, tok.line, tok.col);
}

TermPtr parse_term_expr(Cursor& cur, const Scheme& scheme, const std::vector<std::string>& params,
                        int rule_line);

TermPtr parse_term_atom(Cursor& cur, const Scheme& scheme, const std::vector<std::string>& params) {
  if (cur.try_symbol("(")) {
    TermPtr t = parse_term_expr(cur, scheme, params, -1);
    cur.expect_symbol(")");
    return t;
  }
  const Token& tok = cur.peek();
  if (tok.type != Token::Ident) cur.fail("expected term");
  cur.next();
  return classify(tok.text, scheme, params, tok);
}

// One rule per line: with rule_line >= 0 the application stops at a line
// break; inside parentheses (rule_line < 0) the term may span lines.
TermPtr parse_term_expr(Cursor& cur, const Scheme& scheme, const std::vector<std::string>& params,
                        int rule_line) {
  TermPtr t = parse_term_atom(cur, scheme, params);
  for (;;) {
    const Token& tok = cur.peek();
    bool more = (tok.type == Token::Ident && !is_scheme_keyword(tok.text)) ||
                (tok.type == Token::Symbol && tok.text == "(");
    if (!more) break;
    if (rule_line >= 0 && tok.line != rule_line) break;
    t = Term::app(t, parse_term_atom(cur, scheme, params));
  }
  return t;
}

void kind_check_scheme(const Scheme& scheme) {
  auto start_it = scheme.nonterminals.find(scheme.start);
  if (start_it == scheme.nonterminals.end())
    throw KindError("start symbol " + scheme.start + " is not a non-terminal");
  if (!start_it->second.is_ground())
    throw KindError("start symbol " + scheme.start + " must have kind o");
  if (!scheme.rules.count(scheme.start)) throw KindError("no rule for start symbol");

  std::map<std::string, Kind> base;
  for (const auto& [name, arity] : scheme.terminals)
    base.emplace(name, Kind(std::vector<Kind>(static_cast<size_t>(arity), Kind::ground())));
  for (const auto& [name, kind] : scheme.nonterminals) base.emplace(name, kind);

  for (const auto& [name, kind] : scheme.nonterminals) {
    auto it = scheme.rules.find(name);
    if (it == scheme.rules.end()) throw KindError("no rule for non-terminal " + name);
    const Rule& rule = it->second;
    if (static_cast<int>(rule.params.size()) != kind.arity())
      throw KindError("rule for " + name + " takes " + std::to_string(rule.params.size()) +
                      " parameters but its kind has arity " + std::to_string(kind.arity()));
    std::map<std::string, Kind> env = base;
    for (size_t i = 0; i < rule.params.size(); i++) env[rule.params[i]] = kind.args()[i];
    Kind body = kind_of(rule.body, env);
    if (!body.is_ground())
      throw KindError("rule body for " + name + " has kind " + body.to_string() +
                      ", expected o");
  }
}

}  // namespace

Scheme parse_scheme(const std::string& text) {
  auto toks = detail::tokenize(text);
  Cursor cur{toks};
  Scheme scheme;

  cur.expect_keyword("terminals");
  cur.expect_symbol(":");
  while (cur.peek().type == Token::Ident && !is_scheme_keyword(cur.peek().text)) {
    const Token& tok = cur.peek();
    std::string name = cur.expect_ident("terminal name");
    cur.expect_symbol(":");
    int arity = cur.expect_number("terminal arity");
    if (!scheme.terminals.emplace(name, arity).second)
      throw ParseError("duplicate terminal: " + name, tok.line, tok.col);
  }

  cur.expect_keyword("nonterminals");
  cur.expect_symbol(":");
  while (cur.peek().type == Token::Ident && !is_scheme_keyword(cur.peek().text)) {
    const Token& tok = cur.peek();
    std::string name = cur.expect_ident("non-terminal name");
    cur.expect_symbol(":");
    Kind kind = detail::parse_kind_expr(cur);
    if (scheme.terminals.count(name))
      throw ParseError("symbol declared both terminal and non-terminal: " + name, tok.line,
                       tok.col);
    if (!scheme.nonterminals.emplace(name, kind).second)
      throw ParseError("duplicate non-terminal: " + name, tok.line, tok.col);
  }

  cur.expect_keyword("start");
  cur.expect_symbol(":");
  scheme.start = cur.expect_ident("start symbol");

  cur.expect_keyword("rules");
  cur.expect_symbol(":");
  while (!cur.at_end()) {
    const Token& head = cur.peek();
    std::string name = cur.expect_ident("rule head");
    if (!scheme.nonterminals.count(name))
      throw ParseError("rule for unknown non-terminal: " + name, head.line, head.col);
    std::vector<std::string> params;
    while (cur.peek().type == Token::Ident && cur.peek().line == head.line) {
      const Token& ptok = cur.peek();
      params.push_back(cur.next().text);
      if (scheme.nonterminals.count(params.back()) || scheme.terminals.count(params.back()))
        throw ParseError("rule parameter shadows a declared symbol: " + params.back(), ptok.line,
                         ptok.col);
    }
    cur.expect_symbol("->");
    TermPtr body = parse_term_expr(cur, scheme, params, cur.peek().line);
    if (!scheme.rules.emplace(name, Rule{std::move(params), body}).second)
      throw ParseError("duplicate rule for " + name, head.line, head.col);
  }

  kind_check_scheme(scheme);
  return scheme;
}

Scheme load_scheme(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scheme file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scheme(ss.str());
}

std::string print_scheme(const Scheme& scheme) {
  std::ostringstream out;
  out << "terminals: ";
  bool first = true;
  for (const auto& [name, arity] : scheme.terminals) {
    out << (first ? "" : "   ") << name << " : " << arity;
    first = false;
  }
  out << "\nnonterminals: ";
  first = true;
  for (const auto& [name, kind] : scheme.nonterminals) {
    out << (first ? "" : "   ") << name << " : " << kind.to_string();
    first = false;
  }
  out << "\nstart: " << scheme.start << "\nrules:\n";
  for (const auto& [name, rule] : scheme.rules) {
    out << "  " << name;
    for (const auto& p : rule.params) out << " " << p;
    out << " -> " << rule.body->to_string() << "\n";
  }
  return out.str();
}

Kind parse_kind(const std::string& text) {
  auto toks = detail::tokenize(text);
  Cursor cur{toks};
  Kind k = detail::parse_kind_expr(cur);
  if (!cur.at_end()) cur.fail("trailing input after kind");
  return k;
}

TermPtr parse_term(const std::string& text, const Scheme& scheme,
                   const std::vector<std::string>& params) {
  auto toks = detail::tokenize(text);
  Cursor cur{toks};
  TermPtr t = parse_term_expr(cur, scheme, params, -1);
  if (!cur.at_end()) cur.fail("trailing input after term");
  return t;
}

}  // namespace horsck
