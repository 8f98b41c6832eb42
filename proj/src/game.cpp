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

#include "horsck/game.hpp"

#include <chrono>
#include <deque>
#include <tuple>

#include "horsck/validate.hpp"

namespace horsck {

int encode(Color m) { return m.is_neutral() ? 1 : m.level() + 2; }

namespace {

std::string eve_label(const EveVertex& v) {
  return v.nonterminal + " : [" + v.color.to_string() + "]" + v.type->printed();
}

}  // namespace

TypingGame build_game(const Scheme& scheme, const Automaton& automaton, const std::string& q0,
                      const CheckOptions& options) {
  if (!automaton.has_state(q0)) throw std::invalid_argument("unknown state: " + q0);
  automaton.validate_against(scheme);

  TypingGame out;
  SearchOptions search{options.prune, options.limits};

  // keys: (non-terminal, color, printed type) and canonical contexts
  std::map<std::tuple<std::string, std::string, std::string>, int> eve_ids;
  std::map<Ctx, int> adam_ids;
  // context sets are independent of the vertex color, so cache per (F, type)
  std::map<std::pair<std::string, std::string>, std::map<Ctx, DerivationPtr>> context_cache;
  std::deque<int> pending_eve;
  std::deque<int> pending_adam;

  auto intern_eve = [&](const std::string& name, Color m, const ITypePtr& type) {
    auto key = std::make_tuple(name, m.to_string(), type->printed());
    auto it = eve_ids.find(key);
    if (it != eve_ids.end()) return it->second;
    EveVertex payload{name, m, type};
    int id = out.game.add_vertex(Owner::Eve, encode(m), eve_label(payload));
    out.eve_payload.push_back(payload);
    out.adam_payload.push_back(std::nullopt);
    eve_ids.emplace(key, id);
    pending_eve.push_back(id);
    if (out.game.size() > options.limits.max_game_vertices)
      throw LimitError("typing game exceeds the vertex limit");
    return id;
  };
  auto intern_adam = [&](const Ctx& ctx) {
    auto it = adam_ids.find(ctx);
    if (it != adam_ids.end()) return it->second;
    int id = out.game.add_vertex(Owner::Adam, encode(Color::neutral()), ctx.to_string());
    out.eve_payload.push_back(std::nullopt);
    out.adam_payload.push_back(ctx);
    adam_ids.emplace(ctx, id);
    pending_adam.push_back(id);
    if (out.game.size() > options.limits.max_game_vertices)
      throw LimitError("typing game exceeds the vertex limit");
    return id;
  };

  out.game.initial = intern_eve(scheme.start, Color::neutral(), IType::state(q0));

  while (!pending_eve.empty() || !pending_adam.empty()) {
    if (!pending_eve.empty()) {
      int id = pending_eve.front();
      pending_eve.pop_front();
      // copy: interning below grows the payload vectors
      EveVertex v = *out.eve_payload[static_cast<size_t>(id)];
      auto cache_key = std::make_pair(v.nonterminal, v.type->printed());
      auto cached = context_cache.find(cache_key);
      if (cached == context_cache.end()) {
        cached = context_cache
                     .emplace(cache_key, enumerate_contexts(v.nonterminal, v.type, scheme,
                                                            automaton, search))
                     .first;
      }
      for (const auto& [ctx, deriv] : cached->second) {
        int adam = intern_adam(ctx);
        out.game.add_edge(id, adam);
        out.edge_derivations.emplace(std::make_pair(id, adam), deriv);
      }
      continue;
    }
    int id = pending_adam.front();
    pending_adam.pop_front();
    // copy: interning below grows the payload vectors
    Ctx ctx = *out.adam_payload[static_cast<size_t>(id)];
    for (const auto& [name, set] : ctx.bindings())
      for (const auto& [m, type] : set) out.game.add_edge(id, intern_eve(name, m, type));
  }

  return out;
}

// ---------------------------------------------------------------------------
// Witness extraction

int Witness::cycles_max_color() const {
  // Tarjan over the successor graph; the maximum encoded color inside any
  // non-trivial strongly connected component lies on a cycle.
  size_t n = entries.size();
  std::vector<int> index(n, -1), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<int> stack;
  int next_index = 0;
  int best = 0;
  struct Frame {
    int v;
    size_t edge;
  };
  for (size_t root = 0; root < n; root++) {
    if (index[root] != -1) continue;
    std::vector<Frame> frames{{static_cast<int>(root), 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(static_cast<int>(root));
    on_stack[root] = true;
    while (!frames.empty()) {
      int v = frames.back().v;
      size_t sv = static_cast<size_t>(v);
      if (frames.back().edge < entries[sv].successors.size()) {
        int w = entries[sv].successors[frames.back().edge++];
        size_t sw = static_cast<size_t>(w);
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
        if (!frames.empty())
          low[static_cast<size_t>(frames.back().v)] =
              std::min(low[static_cast<size_t>(frames.back().v)], low[sv]);
        if (low[sv] == index[sv]) {
          std::vector<int> members;
          for (;;) {
            int w = stack.back();
            stack.pop_back();
            on_stack[static_cast<size_t>(w)] = false;
            members.push_back(w);
            if (w == v) break;
          }
          bool cyclic = members.size() > 1;
          if (!cyclic)
            for (int w : entries[static_cast<size_t>(members[0])].successors)
              if (w == members[0]) cyclic = true;
          if (cyclic)
            for (int m : members)
              best = std::max(best, encode(entries[static_cast<size_t>(m)].vertex.color));
        }
      }
    }
  }
  return best;
}

Witness extract_witness(const TypingGame& tg, const SolveResult& solved, const Scheme& scheme) {
  (void)scheme;
  int initial = tg.game.initial;
  if (!solved.eve_wins[static_cast<size_t>(initial)])
    throw InternalError("witness requested for a lost game");

  Witness w;
  std::map<int, int> entry_of;  // game vertex -> entry index
  std::deque<int> queue{initial};
  entry_of.emplace(initial, 0);
  w.entries.emplace_back();

  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    size_t sv = static_cast<size_t>(v);
    if (!solved.eve_wins[sv])
      throw InternalError("winning strategy reached a lost vertex");
    int adam = solved.strategy[sv];
    if (adam < 0) throw InternalError("no strategy move at a winning prover vertex");
    const Ctx& ctx = *tg.adam_payload[static_cast<size_t>(adam)];
    auto deriv_it = tg.edge_derivations.find({v, adam});
    if (deriv_it == tg.edge_derivations.end())
      throw InternalError("strategy edge without a derivation");

    Witness::Entry& entry = w.entries[static_cast<size_t>(entry_of.at(v))];
    entry.vertex = *tg.eve_payload[sv];
    entry.context = ctx;
    entry.derivation = deriv_it->second;

    std::vector<int> succs;
    for (const auto& [name, set] : ctx.bindings()) {
      for (const auto& [m, type] : set) {
        // locate the successor vertex (name, m, type)
        int target = -1;
        for (int cand : tg.game.edges[static_cast<size_t>(adam)]) {
          const auto& payload = tg.eve_payload[static_cast<size_t>(cand)];
          if (payload && payload->nonterminal == name && payload->color == m &&
              itype_eq(payload->type, type)) {
            target = cand;
            break;
          }
        }
        if (target < 0) throw InternalError("context binding without a game successor");
        auto it = entry_of.find(target);
        if (it == entry_of.end()) {
          it = entry_of.emplace(target, static_cast<int>(w.entries.size())).first;
          w.entries.emplace_back();
          queue.push_back(target);
        }
        succs.push_back(it->second);
      }
    }
    w.entries[static_cast<size_t>(entry_of.at(v))].successors = std::move(succs);
  }
  w.initial = 0;
  return w;
}

// ---------------------------------------------------------------------------
// check

Verdict check(const Scheme& scheme, const Automaton& automaton, const std::string& q0,
              const CheckOptions& options) {
  using clock = std::chrono::steady_clock;
  Verdict verdict;
  verdict.initial_state = q0;

  auto t0 = clock::now();
  TypingGame tg = build_game(scheme, automaton, q0, options);
  auto t1 = clock::now();
  SolveResult solved = solve_zielonka(tg.game);
  auto t2 = clock::now();

  verdict.build_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
  verdict.solve_ms = std::chrono::duration<double, std::milli>(t2 - t1).count();
  verdict.vertices = tg.game.size();
  for (const auto& adj : tg.game.edges) verdict.edges += adj.size();
  {
    std::vector<int> colors;
    for (const auto& v : tg.game.vertices) colors.push_back(v.color);
    std::sort(colors.begin(), colors.end());
    colors.erase(std::unique(colors.begin(), colors.end()), colors.end());
    verdict.distinct_colors = static_cast<int>(colors.size());
  }

  verdict.accepted = solved.eve_wins[static_cast<size_t>(tg.game.initial)];
  if (verdict.accepted) {
    verdict.witness = extract_witness(tg, solved, scheme);
    if (options.validate) {
      std::string error;
      if (!validate_witness(*verdict.witness, scheme, automaton, q0, &error))
        throw InternalError("extracted witness failed validation: " + error);
    }
  }
  return verdict;
}

}  // namespace horsck
