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

#ifndef HORSCK_SYNTAX_HPP
#define HORSCK_SYNTAX_HPP

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace horsck {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, int line, int col);
  int line;
  int col;
};

struct KindError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simple types over the ground kind `o`, kept structural: a kind is the
// ordered list of its argument kinds, so the ground kind is the empty list.
class Kind {
 public:
  Kind() = default;
  explicit Kind(std::vector<Kind> args) : args_(std::move(args)) {}

  static Kind ground() { return Kind{}; }
  static Kind arrow(Kind arg, Kind rest);

  bool is_ground() const { return args_.empty(); }
  int arity() const { return static_cast<int>(args_.size()); }
  const std::vector<Kind>& args() const { return args_; }
  int order() const;

  // Drops the first n argument kinds.
  Kind suffix(int n) const;

  std::string to_string() const;

  bool operator==(const Kind& other) const;
  bool operator!=(const Kind& other) const { return !(*this == other); }
  bool operator<(const Kind& other) const;

 private:
  std::vector<Kind> args_;
};

enum class TermTag { Var, NonTerminal, Terminal, App };

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Applicative terms: rule bodies never contain abstractions, so the only
// composite form is application.
class Term {
 public:
  static TermPtr var(std::string name);
  static TermPtr nonterminal(std::string name);
  static TermPtr terminal(std::string name);
  static TermPtr app(TermPtr fun, TermPtr arg);

  TermTag tag() const { return tag_; }
  bool is_leaf() const { return tag_ != TermTag::App; }
  const std::string& name() const { return name_; }
  const TermPtr& fun() const { return fun_; }
  const TermPtr& arg() const { return arg_; }

  std::string to_string() const;

 private:
  Term(TermTag tag, std::string name, TermPtr fun, TermPtr arg)
      : tag_(tag), name_(std::move(name)), fun_(std::move(fun)), arg_(std::move(arg)) {}

  TermTag tag_;
  std::string name_;
  TermPtr fun_;
  TermPtr arg_;
};

// Head and arguments of the application spine t = h t1 ... tn.
std::pair<TermPtr, std::vector<TermPtr>> spine(const TermPtr& term);

struct Rule {
  std::vector<std::string> params;
  TermPtr body;
};

struct Scheme {
  std::map<std::string, int> terminals;        // name -> arity
  std::map<std::string, Kind> nonterminals;    // name -> kind
  std::string start;
  std::map<std::string, Rule> rules;

  int order() const;
  Kind terminal_kind(const std::string& name) const;
};

// Simple kinding of an applicative term; every free name must be bound in env.
Kind kind_of(const TermPtr& term, const std::map<std::string, Kind>& env);

// Parses and kind-checks the textual scheme format. Throws ParseError with
// line/column on syntax problems and KindError on ill-kinded rules.
Scheme parse_scheme(const std::string& text);
Scheme load_scheme(const std::string& path);

std::string print_scheme(const Scheme& scheme);

Kind parse_kind(const std::string& text);

// Parses an applicative term, classifying identifiers against the scheme's
// namespaces plus the given rule-local parameters.
TermPtr parse_term(const std::string& text, const Scheme& scheme,
                   const std::vector<std::string>& params);

}  // namespace horsck

#endif  // HORSCK_SYNTAX_HPP
