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

#ifndef HORSCK_GAME_HPP
#define HORSCK_GAME_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "horsck/automata.hpp"
#include "horsck/coltypes.hpp"
#include "horsck/limits.hpp"
#include "horsck/proofsearch.hpp"
#include "horsck/solver.hpp"
#include "horsck/syntax.hpp"

namespace horsck {

struct InternalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A colored typing for a non-terminal: the owner of the corresponding game
// vertex proves  context |- R(F) : type  after choosing a context.
struct EveVertex {
  std::string nonterminal;
  Color color = Color::neutral();
  ITypePtr type;
};

// Total order on natural colors used by the game: real colors are shifted by
// two (parity preserved) and the neutral color maps to 1, so a play dominated
// by neutral colors is odd and lost by the prover.
int encode(Color m);

// The typing game together with the payloads behind its vertices and the
// derivation attached to each prover move.
struct TypingGame {
  ParityGame game;
  std::vector<std::optional<EveVertex>> eve_payload;  // per vertex
  std::vector<std::optional<Ctx>> adam_payload;       // per vertex
  std::map<std::pair<int, int>, DerivationPtr> edge_derivations;  // Eve edge -> proof
};

struct CheckOptions {
  bool prune = true;
  Limits limits = Limits::defaults();
  bool validate = true;  // revalidate extracted witnesses
};

// Builds the reachable part of the typing game for the scheme, the automaton
// and the given initial state. Deterministic: identical inputs produce
// identical vertex and edge orderings.
TypingGame build_game(const Scheme& scheme, const Automaton& automaton, const std::string& q0,
                      const CheckOptions& options = {});

// A cyclic derivation graph certifying acceptance: one derivation per
// reachable typing under the winning strategy, with successors wired through
// the context bindings. Checkable independently of the solver.
struct Witness {
  struct Entry {
    EveVertex vertex;
    Ctx context;
    DerivationPtr derivation;
    std::vector<int> successors;  // indices into entries
  };
  std::vector<Entry> entries;
  int initial = 0;

  // max encoded color over all cyclic strongly connected parts, 0 if acyclic
  int cycles_max_color() const;
};

Witness extract_witness(const TypingGame& game, const SolveResult& solved, const Scheme& scheme);

struct Verdict {
  bool accepted = false;
  std::string initial_state;
  std::optional<Witness> witness;
  // stats
  size_t vertices = 0;
  size_t edges = 0;
  int distinct_colors = 0;
  double solve_ms = 0.0;
  double build_ms = 0.0;
};

// The full decision pipeline: build the game, solve it, extract and
// revalidate the witness on acceptance.
Verdict check(const Scheme& scheme, const Automaton& automaton, const std::string& q0,
              const CheckOptions& options = {});

// Serialization (game_io.cpp).
std::string game_to_dot(const TypingGame& game);
std::string game_to_json(const TypingGame& game);
std::string witness_to_json(const Witness& witness, const Scheme& scheme);
Witness witness_from_json(const std::string& text, const Scheme& scheme);
std::string verdict_to_json(const Verdict& verdict, bool include_timings,
                            const std::string& witness_path = "");

}  // namespace horsck

#endif  // HORSCK_GAME_HPP
