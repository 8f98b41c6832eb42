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

#ifndef HORSCK_SOLVER_HPP
#define HORSCK_SOLVER_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace horsck {

enum class Owner { Eve, Adam };

// A max-parity game on natural colors. A vertex with no outgoing edge is
// losing for its owner; an infinite play is won by Eve iff the maximum color
// seen infinitely often is even.
struct ParityGame {
  struct Vertex {
    Owner owner;
    int color;
    std::string label;
  };

  std::vector<Vertex> vertices;
  std::vector<std::vector<int>> edges;
  int initial = 0;

  int add_vertex(Owner owner, int color, std::string label = "");
  void add_edge(int from, int to);
  size_t size() const { return vertices.size(); }
  int max_color() const;
};

struct SolveResult {
  // eve_wins[v]: v is in Eve's winning region.
  std::vector<bool> eve_wins;
  // strategy[v]: successor chosen by the winner at v, -1 where irrelevant
  // (vertex owned by the loser of that region, or no outgoing edge).
  std::vector<int> strategy;
};

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Zielonka's recursive algorithm with positional strategy extraction.
SolveResult solve_zielonka(const ParityGame& game);

// Independent oracle sharing no code with the recursive solver: enumerates
// Eve's positional strategies and checks reachable cycles, then mirrors the
// enumeration on Adam's side and cross-checks that the regions partition the
// game. Guarded by max_strategies; throws SolverError when the game is too
// large.
struct NaiveRegions {
  std::vector<bool> eve_wins;
};
NaiveRegions solve_naive(const ParityGame& game, size_t max_strategies = 10000000);

}  // namespace horsck

#endif  // HORSCK_SOLVER_HPP
