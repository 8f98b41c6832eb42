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

#include <doctest.h>

#include "horsck/syntax.hpp"
#include "testutil.hpp"

using namespace horsck;

namespace {

const char* kListProducer = R"(
terminals:  if : 2   data : 1   Nil : 0
nonterminals:  S : o   L : o -> o
start: S
rules:
  S -> L Nil
  L x -> if x (L (data x))
)";

}  // namespace

TEST_CASE("kind structure, arity and order") {
  Kind ground = Kind::ground();
  CHECK(ground.order() == 0);
  CHECK(ground.arity() == 0);

  Kind unary = parse_kind("o -> o");
  CHECK(unary.order() == 1);
  CHECK(unary.arity() == 1);

  CHECK(parse_kind("o -> o -> o").order() == 1);
  CHECK(parse_kind("o -> o -> o").arity() == 2);
  CHECK(parse_kind("(o -> o) -> o").order() == 2);
  CHECK(parse_kind("(o -> o) -> o").arity() == 1);
  CHECK(parse_kind("((o -> o) -> o) -> o").order() == 3);

  // arrows associate to the right
  CHECK(parse_kind("o -> o -> o") == parse_kind("o -> (o -> o)"));
  CHECK(parse_kind("o -> o -> o") != parse_kind("(o -> o) -> o"));

  // structural comparison, usable as a map key
  CHECK(parse_kind("o -> o").suffix(1) == ground);
  CHECK(parse_kind("(o -> o) -> o").args()[0] == unary);
}

TEST_CASE("parsing the list-producer scheme") {
  Scheme s = parse_scheme(kListProducer);
  CHECK(s.start == "S");
  CHECK(s.terminals.at("if") == 2);
  CHECK(s.terminals.at("Nil") == 0);
  CHECK(s.nonterminals.at("L").order() == 1);
  CHECK(s.nonterminals.at("S").is_ground());
  CHECK(s.order() == 1);
  CHECK(s.rules.at("L").params == std::vector<std::string>{"x"});
  CHECK(s.rules.at("L").body->to_string() == "if x (L (data x))");
}

TEST_CASE("print/parse round-trip on canonical text") {
  for (const char* name :
       {"list-producer.hors", "two-branch.hors", "order0-loop.hors", "order0-alternate.hors",
        "order0-finite.hors", "spine-growing.hors", "applicator.hors"}) {
    Scheme s = load_scheme(testutil::corpus_path(name));
    std::string printed = print_scheme(s);
    Scheme reparsed = parse_scheme(printed);
    CHECK(print_scheme(reparsed) == printed);
  }
}

TEST_CASE("order-0 recursive scheme") {
  Scheme s = parse_scheme("terminals: a : 1\nnonterminals: S : o\nstart: S\nrules:\n  S -> a S\n");
  CHECK(s.order() == 0);
  CHECK(s.nonterminals.at("S").is_ground());
}

TEST_CASE("scheme errors") {
  SUBCASE("missing rule for start symbol") {
    CHECK_THROWS_WITH_AS(
        parse_scheme("terminals: a : 1\nnonterminals: S : o\nstart: S\nrules:\n"),
        doctest::Contains("no rule for start symbol"), KindError);
  }
  SUBCASE("start symbol must be ground") {
    CHECK_THROWS_AS(parse_scheme("terminals: a : 1\nnonterminals: S : o -> o\nstart: S\n"
                                 "rules:\n  S x -> a x\n"),
                    KindError);
  }
  SUBCASE("unknown symbol carries a location") {
    try {
      parse_scheme("terminals: a : 1\nnonterminals: S : o\nstart: S\nrules:\n  S -> b S\n");
      CHECK(false);
    } catch (const ParseError& e) {
      CHECK(e.line == 5);
      CHECK(std::string(e.what()).find("unknown symbol") != std::string::npos);
    }
  }
  SUBCASE("parameter shadowing a declared symbol") {
    CHECK_THROWS_AS(parse_scheme("terminals: a : 1\nnonterminals: S : o   T : o -> o\nstart: S\n"
                                 "rules:\n  S -> T (a S)\n  T S -> a S\n"),
                    ParseError);
  }
  SUBCASE("terminal and non-terminal namespaces are disjoint") {
    CHECK_THROWS_AS(parse_scheme("terminals: a : 1\nnonterminals: a : o\nstart: a\n"
                                 "rules:\n  a -> a a\n"),
                    ParseError);
  }
  SUBCASE("arity mismatch in a rule body") {
    CHECK_THROWS_AS(parse_scheme("terminals: a : 2\nnonterminals: S : o\nstart: S\n"
                                 "rules:\n  S -> a S\n"),
                    KindError);
  }
}

TEST_CASE("kind_of on applicative terms") {
  Scheme s = parse_scheme(kListProducer);
  std::map<std::string, Kind> env;
  for (const auto& [n, a] : s.terminals) {
    (void)a;
    env.emplace(n, s.terminal_kind(n));
  }
  for (const auto& [n, k] : s.nonterminals) env.emplace(n, k);
  env.emplace("x", Kind::ground());

  CHECK(kind_of(parse_term("L (data x)", s, {"x"}), env).is_ground());
  CHECK(kind_of(parse_term("if x", s, {"x"}), env) == parse_kind("o -> o"));
  CHECK_THROWS_WITH_AS(kind_of(parse_term("data data", s, {}), env),
                       doctest::Contains("kind mismatch"), KindError);
  CHECK_THROWS_AS(kind_of(Term::var("y"), env), KindError);

  // deterministic and total on kind-checked rule bodies
  for (const auto& [name, rule] : s.rules) {
    std::map<std::string, Kind> renv = env;
    const Kind& kind = s.nonterminals.at(name);
    for (size_t i = 0; i < rule.params.size(); i++) renv[rule.params[i]] = kind.args()[i];
    CHECK(kind_of(rule.body, renv).is_ground());
  }

  // declared arity matches the kind arity for every terminal
  for (const auto& [name, arity] : s.terminals)
    CHECK(s.terminal_kind(name).arity() == arity);
}

TEST_CASE("term printing and spine decomposition") {
  Scheme s = parse_scheme(kListProducer);
  TermPtr t = parse_term("if x (L (data x))", s, {"x"});
  auto [head, args] = spine(t);
  CHECK(head->name() == "if");
  CHECK(args.size() == 2);
  CHECK(args[1]->to_string() == "L (data x)");

  // parenthesisation round-trips
  CHECK(parse_term(t->to_string(), s, {"x"})->to_string() == t->to_string());
}
