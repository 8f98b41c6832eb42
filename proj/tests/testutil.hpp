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

#ifndef HORSCK_TESTS_TESTUTIL_HPP
#define HORSCK_TESTS_TESTUTIL_HPP

#include <cstdio>
#include <random>
#include <string>

#include "horsck/automata.hpp"
#include "horsck/syntax.hpp"

namespace horsck::testutil {

inline std::string corpus_path(const std::string& name) {
  return std::string(HORSCK_CORPUS_DIR) + "/" + name;
}

struct CliResult {
  int exit_code;
  std::string output;  // stdout only
};

// Runs the built binary with the given arguments, capturing stdout.
inline CliResult run_cli(const std::string& args) {
  std::string cmd = std::string(HORSCK_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, ""};
  std::string output;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) output.append(buf, n);
  int status = pclose(pipe);
  int code = -1;
  if (WIFEXITED(status)) code = WEXITSTATUS(status);
  return {code, output};
}

// Small deterministic generator helpers shared by tests.

inline PbfPtr random_pbf(std::mt19937& rng, const std::vector<std::string>& states, int arity,
                         int depth = 2) {
  std::uniform_int_distribution<int> shape(0, depth > 0 ? 4 : 2);
  std::uniform_int_distribution<size_t> state_pick(0, states.size() - 1);
  switch (arity == 0 ? shape(rng) % 2 : shape(rng)) {
    case 0:
      return Pbf::truth();
    case 1:
      return Pbf::falsity();
    case 2: {
      std::uniform_int_distribution<int> dir(1, arity);
      return Pbf::atom(dir(rng), states[state_pick(rng)]);
    }
    case 3:
      return Pbf::conj(random_pbf(rng, states, arity, depth - 1),
                       random_pbf(rng, states, arity, depth - 1));
    default:
      return Pbf::disj(random_pbf(rng, states, arity, depth - 1),
                       random_pbf(rng, states, arity, depth - 1));
  }
}

inline Automaton random_automaton(std::mt19937& rng, const std::map<std::string, int>& signature,
                                  int num_states, int max_color) {
  Automaton aut;
  for (int i = 0; i < num_states; i++) aut.states.push_back("q" + std::to_string(i));
  aut.initial = aut.states.front();
  std::uniform_int_distribution<int> color(0, max_color);
  for (const auto& q : aut.states) aut.coloring[q] = color(rng);
  std::uniform_int_distribution<int> present(0, 3);
  for (const auto& [terminal, arity] : signature)
    for (const auto& q : aut.states)
      if (present(rng) != 0)  // missing entries stay false
        aut.transitions[{q, terminal}] = random_pbf(rng, aut.states, arity);
  return aut;
}

inline TreePtr random_finite_tree(std::mt19937& rng, int max_depth) {
  // signature {a:2, b:1, c:0}
  std::uniform_int_distribution<int> pick(0, 2);
  int choice = max_depth <= 0 ? 2 : pick(rng);
  switch (choice) {
    case 0:
      return Tree::node("a", {random_finite_tree(rng, max_depth - 1),
                              random_finite_tree(rng, max_depth - 1)});
    case 1:
      return Tree::node("b", {random_finite_tree(rng, max_depth - 1)});
    default:
      return Tree::node("c", {});
  }
}

}  // namespace horsck::testutil

#endif  // HORSCK_TESTS_TESTUTIL_HPP
