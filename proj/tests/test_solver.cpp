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

#include <random>

#include "horsck/solver.hpp"

using namespace horsck;

namespace {

ParityGame random_game(std::mt19937& rng, int max_vertices, int max_color) {
  ParityGame g;
  std::uniform_int_distribution<int> nv(1, max_vertices);
  int n = nv(rng);
  std::uniform_int_distribution<int> color(0, max_color);
  std::uniform_int_distribution<int> owner(0, 1);
  std::uniform_int_distribution<int> degree(0, 3);
  std::uniform_int_distribution<int> target(0, n - 1);
  for (int v = 0; v < n; v++)
    g.add_vertex(owner(rng) ? Owner::Eve : Owner::Adam, color(rng));
  for (int v = 0; v < n; v++)
    for (int d = degree(rng); d > 0; d--) g.add_edge(v, target(rng));
  g.initial = 0;
  return g;
}

}  // namespace

TEST_CASE("single-vertex games") {
  SUBCASE("even self-loop is won by Eve") {
    ParityGame g;
    g.add_vertex(Owner::Eve, 2);
    g.add_edge(0, 0);
    CHECK(solve_zielonka(g).eve_wins[0]);
    CHECK(solve_naive(g).eve_wins[0]);
  }
  SUBCASE("odd self-loop is won by Adam") {
    ParityGame g;
    g.add_vertex(Owner::Eve, 3);
    g.add_edge(0, 0);
    CHECK(!solve_zielonka(g).eve_wins[0]);
    CHECK(!solve_naive(g).eve_wins[0]);
  }
  SUBCASE("the player stuck on their own vertex loses") {
    ParityGame g;
    g.add_vertex(Owner::Adam, 0);  // no edges: Adam controls the last vertex
    CHECK(solve_zielonka(g).eve_wins[0]);
    CHECK(solve_naive(g).eve_wins[0]);

    ParityGame h;
    h.add_vertex(Owner::Eve, 0);
    CHECK(!solve_zielonka(h).eve_wins[0]);
    CHECK(!solve_naive(h).eve_wins[0]);
  }
}

TEST_CASE("strategy extraction picks winning moves") {
  // Eve chooses between an odd loop and an even loop
  ParityGame g;
  int root = g.add_vertex(Owner::Eve, 0);
  int odd = g.add_vertex(Owner::Eve, 1);
  int even = g.add_vertex(Owner::Eve, 2);
  g.add_edge(root, odd);
  g.add_edge(root, even);
  g.add_edge(odd, odd);
  g.add_edge(even, even);

  SolveResult r = solve_zielonka(g);
  CHECK(r.eve_wins[root]);
  CHECK(!r.eve_wins[odd]);
  CHECK(r.eve_wins[even]);
  CHECK(r.strategy[root] == even);
  CHECK(r.strategy[even] == even);

  // following the strategy from the winning region never leaves it
  for (size_t v = 0; v < g.size(); v++)
    if (r.eve_wins[v] && r.strategy[v] >= 0) CHECK(r.eve_wins[r.strategy[v]]);
}

TEST_CASE("alternating owners with a forced odd cycle") {
  // Adam can force the play through an odd color
  ParityGame g;
  int e = g.add_vertex(Owner::Eve, 0);
  int a = g.add_vertex(Owner::Adam, 0);
  int bad = g.add_vertex(Owner::Eve, 1);
  g.add_edge(e, a);
  g.add_edge(a, bad);
  g.add_edge(bad, e);
  SolveResult r = solve_zielonka(g);
  CHECK(!r.eve_wins[e]);

  // raising the even color above the odd one flips the game
  g.vertices[0].color = 2;
  r = solve_zielonka(g);
  CHECK(r.eve_wins[e]);
}

TEST_CASE("solvers agree on random games") {
  std::mt19937 rng(123);
  for (int i = 0; i < 300; i++) {
    ParityGame g = random_game(rng, 8, 4);
    SolveResult z = solve_zielonka(g);
    NaiveRegions n = solve_naive(g);
    for (size_t v = 0; v < g.size(); v++) CHECK(z.eve_wins[v] == n.eve_wins[v]);
  }
}

TEST_CASE("naive solver guard") {
  ParityGame g;
  for (int v = 0; v < 24; v++) g.add_vertex(Owner::Eve, 0);
  for (int v = 0; v < 24; v++)
    for (int w = 0; w < 24; w++) g.add_edge(v, w);
  CHECK_THROWS_AS(solve_naive(g, 1000), SolverError);
}
