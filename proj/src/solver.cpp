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

#include "horsck/solver.hpp"

#include <algorithm>
#include <deque>

namespace horsck {

int ParityGame::add_vertex(Owner owner, int color, std::string label) {
  vertices.push_back({owner, color, std::move(label)});
  edges.emplace_back();
  return static_cast<int>(vertices.size()) - 1;
}

void ParityGame::add_edge(int from, int to) {
  edges[static_cast<size_t>(from)].push_back(to);
}

int ParityGame::max_color() const {
  int best = 0;
  for (const auto& v : vertices) best = std::max(best, v.color);
  return best;
}

// ---------------------------------------------------------------------------
// Zielonka

namespace {

// Internal view of the game where every vertex has a successor: a dead end is
// replaced by a self-loop whose color makes its owner lose, which matches the
// finite-maximal-play rule.
struct Arena {
  const ParityGame& game;
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<int>> pred;
  std::vector<int> color;

  explicit Arena(const ParityGame& g) : game(g) {
    size_t n = g.size();
    succ.resize(n);
    pred.resize(n);
    color.resize(n);
    for (size_t v = 0; v < n; v++) {
      color[v] = g.vertices[v].color;
      if (g.edges[v].empty()) {
        succ[v].push_back(static_cast<int>(v));
        pred[v].push_back(static_cast<int>(v));
        color[v] = g.vertices[v].owner == Owner::Eve ? 1 : 0;
      } else {
        for (int w : g.edges[v]) {
          succ[v].push_back(w);
          pred[static_cast<size_t>(w)].push_back(static_cast<int>(v));
        }
      }
    }
  }

  Owner owner(int v) const { return game.vertices[static_cast<size_t>(v)].owner; }
};

struct Zielonka {
  const Arena& arena;
  std::vector<bool> eve_wins;
  std::vector<int> strategy;

  explicit Zielonka(const Arena& a)
      : arena(a),
        eve_wins(a.succ.size(), false),
        strategy(a.succ.size(), -1) {}

  /**
   * Computes the attractor of <target> for <player> inside <sub>, removing
   * attracted vertices from <sub>. For the player's vertices attracted from
   * outside the target, records the pulling edge in <strat>.
   */
  std::vector<int> attract(Owner player, const std::vector<int>& target, std::vector<bool>& sub,
                           std::vector<int>& strat) {
    std::vector<int> attracted = target;
    std::vector<int> out_degree(arena.succ.size(), 0);
    for (size_t v = 0; v < arena.succ.size(); v++) {
      if (!sub[v]) continue;
      for (int w : arena.succ[v])
        if (sub[static_cast<size_t>(w)]) out_degree[v]++;
    }
    std::deque<int> queue(target.begin(), target.end());
    std::vector<bool> in(arena.succ.size(), false);
    for (int v : target) in[static_cast<size_t>(v)] = true;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (int u : arena.pred[static_cast<size_t>(v)]) {
        size_t su = static_cast<size_t>(u);
        if (!sub[su] || in[su]) continue;
        if (arena.owner(u) == player) {
          in[su] = true;
          strat[su] = v;
          attracted.push_back(u);
          queue.push_back(u);
        } else {
          if (--out_degree[su] == 0) {
            in[su] = true;
            attracted.push_back(u);
            queue.push_back(u);
          }
        }
      }
    }
    for (int v : attracted) sub[static_cast<size_t>(v)] = false;
    return attracted;
  }

  // Solves the subgame induced by <sub>; fills eve_wins and strategy for its
  // vertices. Every vertex of <sub> is assumed to keep at least one successor
  // inside <sub>.
  void solve(std::vector<bool> sub) {
    int d = -1;
    for (size_t v = 0; v < sub.size(); v++)
      if (sub[v]) d = std::max(d, arena.color[v]);
    if (d < 0) return;  // empty subgame

    Owner player = (d % 2 == 0) ? Owner::Eve : Owner::Adam;
    std::vector<int> top;
    for (size_t v = 0; v < sub.size(); v++)
      if (sub[v] && arena.color[v] == d) top.push_back(static_cast<int>(v));

    std::vector<int> attr_strat(arena.succ.size(), -1);
    std::vector<bool> rest = sub;
    std::vector<int> attracted = attract(player, top, rest, attr_strat);

    solve(rest);

    bool opponent_empty = true;
    for (size_t v = 0; v < rest.size(); v++) {
      if (!rest[v]) continue;
      bool v_eve = eve_wins[v];
      if ((player == Owner::Eve) != v_eve) {
        opponent_empty = false;
        break;
      }
    }

    if (opponent_empty) {
      // The whole subgame goes to <player>: recursion strategy on the rest,
      // attractor strategy towards the top color, any inside move on top.
      for (int v : attracted) {
        size_t sv = static_cast<size_t>(v);
        eve_wins[sv] = (player == Owner::Eve);
        if (arena.owner(v) != player) continue;
        if (attr_strat[sv] >= 0) {
          strategy[sv] = attr_strat[sv];
        } else {
          for (int w : arena.succ[sv])
            if (sub[static_cast<size_t>(w)]) {
              strategy[sv] = w;
              break;
            }
        }
      }
      return;
    }

    // The opponent wins part of the rest; attract to it and re-solve what is
    // left for both players.
    Owner opponent = (player == Owner::Eve) ? Owner::Adam : Owner::Eve;
    std::vector<int> opp_region;
    for (size_t v = 0; v < rest.size(); v++) {
      if (!rest[v]) continue;
      if (eve_wins[v] == (opponent == Owner::Eve)) opp_region.push_back(static_cast<int>(v));
    }
    std::vector<int> opp_strat(arena.succ.size(), -1);
    std::vector<bool> remaining = sub;
    std::vector<int> opp_attracted = attract(opponent, opp_region, remaining, opp_strat);

    for (int v : opp_attracted) {
      size_t sv = static_cast<size_t>(v);
      eve_wins[sv] = (opponent == Owner::Eve);
      if (arena.owner(v) == opponent && opp_strat[sv] >= 0) strategy[sv] = opp_strat[sv];
      // vertices already inside opp_region keep their recursion strategy
    }

    solve(remaining);
  }
};

}  // namespace

SolveResult solve_zielonka(const ParityGame& game) {
  Arena arena(game);
  Zielonka z(arena);
  std::vector<bool> all(game.size(), true);
  z.solve(std::move(all));

  SolveResult result;
  result.eve_wins = std::move(z.eve_wins);
  result.strategy = std::move(z.strategy);
  // The self-loop stand-ins for dead ends are not real moves.
  for (size_t v = 0; v < game.size(); v++)
    if (game.edges[v].empty()) result.strategy[v] = -1;
  // Strategies are only meaningful on the owner's winning region.
  for (size_t v = 0; v < game.size(); v++) {
    bool eve_owned = game.vertices[v].owner == Owner::Eve;
    if (eve_owned != result.eve_wins[v]) result.strategy[v] = -1;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Naive solver

namespace {

// Vertices lying on a cycle whose maximum color has the given parity, within
// the restricted graph. A cycle of maximum color c passes through a vertex of
// color c inside the subgraph of colors <= c, so it is enough to look for
// such vertices in non-trivial strongly connected components.
std::vector<bool> cycle_cores(const std::vector<std::vector<int>>& succ,
                              const std::vector<int>& colors, int parity) {
  size_t n = succ.size();
  std::vector<bool> core(n, false);
  int max_color = 0;
  for (int c : colors) max_color = std::max(max_color, c);
  for (int c = parity; c <= max_color; c += 2) {
    // iterative Tarjan on the subgraph of colors <= c
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0, next_comp = 0;
    struct Frame {
      int v;
      size_t edge;
    };
    for (size_t root = 0; root < n; root++) {
      if (colors[root] > c || index[root] != -1) continue;
      std::vector<Frame> frames{{static_cast<int>(root), 0}};
      index[root] = low[root] = next_index++;
      stack.push_back(static_cast<int>(root));
      on_stack[root] = true;
      while (!frames.empty()) {
        int v = frames.back().v;
        size_t sv = static_cast<size_t>(v);
        if (frames.back().edge < succ[sv].size()) {
          int w = succ[sv][frames.back().edge++];
          size_t sw = static_cast<size_t>(w);
          if (colors[sw] > c) continue;
          if (index[sw] == -1) {
            index[sw] = low[sw] = next_index++;
            stack.push_back(w);
            on_stack[sw] = true;
            frames.push_back({w, 0});
          } else if (on_stack[sw]) {
            low[sv] = std::min(low[sv], index[sw]);
          }
        } else {
          frames.pop_back();
          if (!frames.empty()) {
            size_t parent = static_cast<size_t>(frames.back().v);
            low[parent] = std::min(low[parent], low[sv]);
          }
          if (low[sv] == index[sv]) {
            std::vector<int> members;
            for (;;) {
              int w = stack.back();
              stack.pop_back();
              on_stack[static_cast<size_t>(w)] = false;
              comp[static_cast<size_t>(w)] = next_comp;
              members.push_back(w);
              if (w == v) break;
            }
            bool nontrivial = members.size() > 1;
            if (!nontrivial) {
              for (int w : succ[static_cast<size_t>(members[0])])
                if (w == members[0]) nontrivial = true;
            }
            if (nontrivial) {
              for (int m : members)
                if (colors[static_cast<size_t>(m)] == c) core[static_cast<size_t>(m)] = true;
            }
            next_comp++;
          }
        }
      }
    }
  }
  return core;
}

// Vertices from which some bad vertex is reachable in the restricted graph.
std::vector<bool> can_reach(const std::vector<std::vector<int>>& succ,
                            const std::vector<bool>& bad) {
  size_t n = succ.size();
  std::vector<std::vector<int>> pred(n);
  for (size_t v = 0; v < n; v++)
    for (int w : succ[v]) pred[static_cast<size_t>(w)].push_back(static_cast<int>(v));
  std::vector<bool> reach = bad;
  std::deque<int> queue;
  for (size_t v = 0; v < n; v++)
    if (reach[v]) queue.push_back(static_cast<int>(v));
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    for (int u : pred[static_cast<size_t>(v)]) {
      size_t su = static_cast<size_t>(u);
      if (!reach[su]) {
        reach[su] = true;
        queue.push_back(u);
      }
    }
  }
  return reach;
}

// Winning sets for <player> over all of their positional strategies: a vertex
// is won by the strategy iff the opponent can reach neither a player dead end
// nor a cycle of opponent-favourable maximum color.
std::vector<bool> enumerate_player(const ParityGame& game, Owner player, size_t max_strategies) {
  size_t n = game.size();
  std::vector<int> colors(n);
  for (size_t v = 0; v < n; v++) colors[v] = game.vertices[v].color;

  std::vector<size_t> choice_vertices;
  size_t strategies = 1;
  for (size_t v = 0; v < n; v++) {
    if (game.vertices[v].owner != player || game.edges[v].empty()) continue;
    choice_vertices.push_back(v);
    if (strategies > max_strategies / game.edges[v].size())
      throw SolverError("game too large for the naive solver");
    strategies *= game.edges[v].size();
  }

  int bad_parity = (player == Owner::Eve) ? 1 : 0;
  std::vector<bool> won(n, false);
  std::vector<size_t> pick(choice_vertices.size(), 0);
  for (;;) {
    // restricted graph under this strategy
    std::vector<std::vector<int>> succ(n);
    for (size_t v = 0; v < n; v++) {
      if (game.vertices[v].owner == player) {
        if (!game.edges[v].empty()) {
          size_t idx =
              std::lower_bound(choice_vertices.begin(), choice_vertices.end(), v) -
              choice_vertices.begin();
          succ[v].push_back(game.edges[v][pick[idx]]);
        }
      } else {
        succ[v] = game.edges[v];
      }
    }

    std::vector<bool> bad = cycle_cores(succ, colors, bad_parity);
    for (size_t v = 0; v < n; v++)
      if (game.vertices[v].owner == player && game.edges[v].empty()) bad[v] = true;
    std::vector<bool> losing = can_reach(succ, bad);
    for (size_t v = 0; v < n; v++)
      if (!losing[v]) won[v] = true;

    // next strategy
    size_t i = 0;
    while (i < pick.size()) {
      pick[i]++;
      if (pick[i] < game.edges[choice_vertices[i]].size()) break;
      pick[i] = 0;
      i++;
    }
    if (i == pick.size()) break;
  }
  return won;
}

}  // namespace

NaiveRegions solve_naive(const ParityGame& game, size_t max_strategies) {
  std::vector<bool> eve = enumerate_player(game, Owner::Eve, max_strategies);
  std::vector<bool> adam = enumerate_player(game, Owner::Adam, max_strategies);
  for (size_t v = 0; v < game.size(); v++)
    if (eve[v] == adam[v])
      throw SolverError("naive solver regions do not partition the game at vertex " +
                        std::to_string(v));
  return NaiveRegions{std::move(eve)};
}

}  // namespace horsck
