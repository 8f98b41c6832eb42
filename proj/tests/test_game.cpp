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

#include "horsck/game.hpp"
#include "horsck/validate.hpp"
#include "testutil.hpp"

using namespace horsck;

namespace {

Scheme loop_scheme() {
  return parse_scheme("terminals: a : 1\nnonterminals: S : o\nstart: S\nrules:\n  S -> a S\n");
}

Automaton loop_automaton(int color) {
  Automaton a;
  a.states = {"q"};
  a.initial = "q";
  a.coloring["q"] = color;
  a.transitions[{"q", "a"}] = Pbf::atom(1, "q");
  return a;
}

}  // namespace

TEST_CASE("color encoding") {
  CHECK(encode(Color::level(0)) == 2);
  CHECK(encode(Color::level(3)) == 5);
  CHECK(encode(Color::neutral()) == 1);
  // parity preserved, neutral below every real color and odd
  for (int k = 0; k < 6; k++) {
    CHECK(encode(Color::level(k)) % 2 == k % 2);
    CHECK(encode(Color::neutral()) < encode(Color::level(k)));
  }
  CHECK(encode(Color::neutral()) % 2 == 1);
}

TEST_CASE("game structure for the one-rule loop") {
  TypingGame tg = build_game(loop_scheme(), loop_automaton(0), "q", {});
  // two prover typings (neutral and color 0) and one context
  CHECK(tg.game.size() == 3);
  int eve = 0, adam = 0;
  for (const auto& v : tg.game.vertices) (v.owner == Owner::Eve ? eve : adam)++;
  CHECK(eve == 2);
  CHECK(adam == 1);
  // a single loop through the context vertex
  size_t edges = 0;
  for (const auto& adj : tg.game.edges) edges += adj.size();
  CHECK(edges == 3);
}

TEST_CASE("stuck positions") {
  SUBCASE("empty context ends the play, the refuter loses") {
    Scheme s = parse_scheme("terminals: c : 0\nnonterminals: S : o\nstart: S\nrules:\n  S -> c\n");
    Automaton a;
    a.states = {"q"};
    a.initial = "q";
    a.coloring["q"] = 0;
    a.transitions[{"q", "c"}] = Pbf::truth();
    Verdict v = check(s, a, "q", {});
    CHECK(v.accepted);
    REQUIRE(v.witness.has_value());
    CHECK(v.witness->entries.size() == 1);
    CHECK(v.witness->entries[0].derivation->rule == RuleTag::Delta);
    CHECK(v.witness->cycles_max_color() == 0);  // acyclic
  }
  SUBCASE("untypable start symbol, the prover loses") {
    Scheme s = parse_scheme("terminals: c : 0\nnonterminals: S : o\nstart: S\nrules:\n  S -> c\n");
    Automaton a;
    a.states = {"q"};
    a.initial = "q";
    a.coloring["q"] = 0;
    TypingGame tg = build_game(s, a, "q", {});
    CHECK(tg.game.edges[static_cast<size_t>(tg.game.initial)].empty());
    CHECK(!check(s, a, "q", {}).accepted);
  }
}

TEST_CASE("verdicts on the loop scheme") {
  Verdict even = check(loop_scheme(), loop_automaton(0), "q", {});
  CHECK(even.accepted);
  REQUIRE(even.witness.has_value());
  CHECK(even.witness->entries.size() == 2);
  CHECK(even.witness->cycles_max_color() == 2);

  Verdict odd = check(loop_scheme(), loop_automaton(1), "q", {});
  CHECK(!odd.accepted);
  CHECK(!odd.witness.has_value());
}

TEST_CASE("unknown initial state is rejected") {
  CHECK_THROWS_AS(check(loop_scheme(), loop_automaton(0), "nope", {}), std::invalid_argument);
}

TEST_CASE("list-producer instances") {
  Scheme s = load_scheme(testutil::corpus_path("list-producer.hors"));

  SUBCASE("parity automaton rejects") {
    // every run-tree contains a spine branch alternating between both states,
    // whose maximum color is odd
    Automaton a = load_automaton(testutil::corpus_path("list-producer.apt"));
    CHECK(!check(s, a, "q0", {}).accepted);
  }
  SUBCASE("raising the spine color above the odd state accepts") {
    // with the spine state at color 2, the forced alternating branch has
    // even maximum, and the data chains stay finite
    Automaton a = load_automaton(testutil::corpus_path("list-producer.apt"));
    a.coloring["q0"] = 2;
    Verdict v = check(s, a, "q0", {});
    CHECK(v.accepted);
    REQUIRE(v.witness.has_value());
    std::string error;
    CHECK_MESSAGE(validate_witness(*v.witness, s, a, "q0", &error), error);
  }
  SUBCASE("raising the odd state keeps the rejection") {
    Automaton a = load_automaton(testutil::corpus_path("list-producer.apt"));
    a.coloring["q1"] = 3;
    CHECK(!check(s, a, "q0", {}).accepted);
  }
  SUBCASE("safety variant accepts with a valid witness") {
    Automaton a = load_automaton(testutil::corpus_path("list-producer-safety.apt"));
    Verdict v = check(s, a, "q0", {});
    CHECK(v.accepted);
    REQUIRE(v.witness.has_value());
    std::string error;
    CHECK_MESSAGE(validate_witness(*v.witness, s, a, "q0", &error), error);
    // the acceptance is backed by run prefixes at every tested depth
    for (int d = 1; d <= 5; d++) {
      TreePtr t = expand_value_tree(s, d, 10000);
      CHECK(bounded_run_exists(t, a, "q0", d));
    }
  }
  SUBCASE("pruning does not change the verdicts") {
    CheckOptions no_prune;
    no_prune.prune = false;
    Automaton a = load_automaton(testutil::corpus_path("list-producer-safety.apt"));
    CHECK(check(s, a, "q0", no_prune).accepted == check(s, a, "q0", {}).accepted);
  }
}

TEST_CASE("order-2 instance accepts") {
  Scheme s = load_scheme(testutil::corpus_path("two-branch.hors"));
  Automaton a = load_automaton(testutil::corpus_path("two-branch.apt"));
  Verdict v = check(s, a, "q", {});
  CHECK(v.accepted);
  REQUIRE(v.witness.has_value());
  std::string error;
  CHECK_MESSAGE(validate_witness(*v.witness, s, a, "q", &error), error);
}

TEST_CASE("deterministic construction") {
  Scheme s = load_scheme(testutil::corpus_path("list-producer.hors"));
  Automaton a = load_automaton(testutil::corpus_path("list-producer-safety.apt"));
  TypingGame g1 = build_game(s, a, "q0", {});
  TypingGame g2 = build_game(s, a, "q0", {});
  CHECK(game_to_json(g1) == game_to_json(g2));
  CHECK(game_to_dot(g1) == game_to_dot(g2));
}

TEST_CASE("witness serialization round-trip") {
  Scheme s = load_scheme(testutil::corpus_path("two-branch.hors"));
  Automaton a = load_automaton(testutil::corpus_path("two-branch.apt"));
  Verdict v = check(s, a, "q", {});
  REQUIRE(v.witness.has_value());

  std::string json = witness_to_json(*v.witness, s);
  Witness loaded = witness_from_json(json, s);
  CHECK(loaded.entries.size() == v.witness->entries.size());
  std::string error;
  CHECK_MESSAGE(validate_witness(loaded, s, a, "q", &error), error);
  CHECK(witness_to_json(loaded, s) == json);
}

TEST_CASE("the validator rejects corrupted witnesses") {
  Scheme s = loop_scheme();
  Automaton a = loop_automaton(0);
  Verdict v = check(s, a, "q", {});
  REQUIRE(v.witness.has_value());
  CHECK(validate_witness(*v.witness, s, a, "q"));

  SUBCASE("wrong initial state") {
    CHECK(!validate_witness(*v.witness, s, a, "nope"));
  }
  SUBCASE("flipped vertex color breaks the cycle parity") {
    Witness w = *v.witness;
    for (auto& e : w.entries)
      if (!e.vertex.color.is_neutral()) e.vertex.color = Color::level(1);
    CHECK(!validate_witness(w, s, a, "q"));
  }
  SUBCASE("dropped successor breaks the closure") {
    Witness w = *v.witness;
    for (auto& e : w.entries) e.successors.clear();
    CHECK(!validate_witness(w, s, a, "q"));
  }
  SUBCASE("tampered derivation fails the local rules") {
    Witness w = *v.witness;
    auto& entry = w.entries[0];
    Judgement j = entry.derivation->judgement;
    j.type = IType::state("q");
    j.context = Ctx{};
    entry.derivation = Derivation::make(RuleTag::Delta, j);
    CHECK(!validate_witness(w, s, a, "q"));
  }
}
