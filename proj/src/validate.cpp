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

#include "horsck/validate.hpp"

#include <algorithm>

namespace horsck {

namespace {

struct Failure {
  std::string message;
};

void fail(const std::string& msg) { throw Failure{msg}; }

void require(bool cond, const std::string& msg) {
  if (!cond) fail(msg);
}

bool term_eq(const TermPtr& a, const TermPtr& b) { return a->to_string() == b->to_string(); }

void check_node(const Derivation& d, const Scheme& scheme, const Automaton& automaton) {
  const Judgement& j = d.judgement;
  require(j.term != nullptr && j.type != nullptr, "judgement with missing term or type");
  require(refines(j.type, j.kind),
          "type " + j.type->printed() + " does not refine kind " + j.kind.to_string());

  switch (d.rule) {
    case RuleTag::Axiom: {
      require(d.children.empty(), "axiom with premises");
      require(j.term->tag() == TermTag::Var || j.term->tag() == TermTag::NonTerminal,
              "axiom on a non-variable");
      Ctx expect = Ctx::singleton(j.term->name(), ISet::singleton(Color::neutral(), j.type));
      require(j.context == expect, "axiom context is not the neutral singleton binding");
      if (j.term->tag() == TermTag::NonTerminal) {
        auto it = scheme.nonterminals.find(j.term->name());
        require(it != scheme.nonterminals.end(), "axiom on unknown non-terminal");
        require(it->second == j.kind, "axiom kind differs from the declared kind");
      }
      return;
    }
    case RuleTag::Delta: {
      require(d.children.empty(), "terminal rule with premises");
      require(j.term->tag() == TermTag::Terminal, "terminal rule on a non-terminal head");
      auto arity_it = scheme.terminals.find(j.term->name());
      require(arity_it != scheme.terminals.end(), "terminal rule on unknown terminal");
      int arity = arity_it->second;
      require(j.context.empty(), "terminal rule with a non-empty context");
      require(j.type->arrow_depth() == arity, "terminal type arity mismatch");
      auto [domains, result] = peel_arrows(j.type, arity);
      require(result->is_state(), "terminal type does not end in a state");
      AtomSet atoms;
      for (int i = 0; i < arity; i++) {
        for (const auto& [m, t] : domains[static_cast<size_t>(i)]) {
          require(t->is_state(), "terminal argument entry is not a state");
          require(automaton.has_state(t->state()), "terminal argument uses unknown state");
          require(!m.is_neutral() && m.level() == automaton.color_of(t->state()),
                  "terminal argument color differs from the state color");
          atoms.insert({i + 1, t->state()});
        }
      }
      require(satisfies(atoms, automaton.delta(result->state(), j.term->name())),
              "terminal atoms do not satisfy the transition formula");
      return;
    }
    case RuleTag::App: {
      require(!d.children.empty(), "application without a function premise");
      require(j.term->tag() == TermTag::App, "application rule on a non-application");
      const Derivation& fun = *d.children[0];
      require(term_eq(fun.judgement.term, j.term->fun()), "function premise term mismatch");
      require(!fun.judgement.type->is_state(), "function premise has a ground type");
      const ISet& domain = fun.judgement.type->domain();
      require(itype_eq(fun.judgement.type->codomain(), j.type),
              "application result type mismatch");
      require(d.children.size() == domain.size() + 1,
              "application premise count differs from the demanded set");
      require(d.premise_colors.size() == domain.size(), "premise color count mismatch");
      Ctx ctx = fun.judgement.context;
      size_t idx = 0;
      for (const auto& [m, theta] : domain) {
        const Derivation& prem = *d.children[idx + 1];
        require(d.premise_colors[idx] == m, "premise color differs from the demanded color");
        require(term_eq(prem.judgement.term, j.term->arg()), "argument premise term mismatch");
        require(itype_eq(prem.judgement.type, theta),
                "argument premise type differs from the demand");
        ctx = ctx.add(prem.judgement.context.boxed(m));
        idx++;
      }
      require(j.context == ctx, "application context is not the boxed sum of its premises");
      require(fun.judgement.kind.arity() >= 1, "function premise kind has no argument");
      require(fun.judgement.kind.suffix(1) == j.kind, "application kind mismatch");
      for (const auto& c : d.children) check_node(*c, scheme, automaton);
      return;
    }
    case RuleTag::Lambda: {
      require(d.children.size() == 1, "abstraction with premise count != 1");
      require(!d.param.empty(), "abstraction without a parameter");
      const Derivation& body = *d.children[0];
      require(term_eq(body.judgement.term, j.term), "abstraction body term mismatch");
      require(!j.type->is_state(), "abstraction with a ground type");
      const ISet& declared = j.type->domain();
      require(itype_eq(j.type->codomain(), body.judgement.type),
              "abstraction result type mismatch");
      const ISet* used = body.judgement.context.find(d.param);
      if (used) require(used->subset_of(declared), "body uses bindings outside the declared set");
      require(j.context == body.judgement.context.without(d.param),
              "abstraction context keeps the discharged parameter");
      require(j.context.find(d.param) == nullptr, "parameter still bound after discharge");
      require(j.kind.arity() >= 1 && j.kind.suffix(1) == body.judgement.kind,
              "abstraction kind mismatch");
      check_node(body, scheme, automaton);
      return;
    }
  }
  fail("unknown rule tag");
}

// No cycle of odd maximum encoded color: a cycle of maximum color c passes
// through a color-c vertex inside the subgraph of colors <= c.
bool odd_cycle_free(const std::vector<std::vector<int>>& succ, const std::vector<int>& colors,
                    int* bad_vertex) {
  size_t n = succ.size();
  int max_color = 0;
  for (int c : colors) max_color = std::max(max_color, c);
  for (int c = 1; c <= max_color; c += 2) {
    // DFS-based SCC on the subgraph of colors <= c
    std::vector<int> index(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<int> stack;
    int next_index = 0;
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
              for (int w : succ[static_cast<size_t>(members[0])])
                if (w == members[0]) cyclic = true;
            if (cyclic)
              for (int m : members)
                if (colors[static_cast<size_t>(m)] == c) {
                  if (bad_vertex) *bad_vertex = m;
                  return false;
                }
          }
        }
      }
    }
  }
  return true;
}

}  // namespace

bool validate_derivation(const Derivation& derivation, const Scheme& scheme,
                         const Automaton& automaton, std::string* error) {
  try {
    check_node(derivation, scheme, automaton);
    return true;
  } catch (const Failure& f) {
    if (error) *error = f.message;
    return false;
  }
}

bool validate_witness(const Witness& witness, const Scheme& scheme, const Automaton& automaton,
                      const std::string& q0, std::string* error) {
  try {
    require(!witness.entries.empty(), "witness without entries");
    require(witness.initial >= 0 &&
                witness.initial < static_cast<int>(witness.entries.size()),
            "witness initial entry out of range");
    {
      const auto& init = witness.entries[static_cast<size_t>(witness.initial)].vertex;
      require(init.nonterminal == scheme.start, "initial entry is not the start symbol");
      require(init.color.is_neutral(), "initial entry carries a non-neutral color");
      require(init.type->is_state() && init.type->state() == q0,
              "initial entry type differs from the initial state");
    }

    for (size_t i = 0; i < witness.entries.size(); i++) {
      const Witness::Entry& entry = witness.entries[i];
      auto kind_it = scheme.nonterminals.find(entry.vertex.nonterminal);
      require(kind_it != scheme.nonterminals.end(), "entry for unknown non-terminal");
      require(refines(entry.vertex.type, kind_it->second),
              "entry type does not refine the declared kind");
      require(entry.derivation != nullptr, "entry without derivation");

      std::string deriv_error;
      if (!validate_derivation(*entry.derivation, scheme, automaton, &deriv_error))
        fail("entry " + std::to_string(i) + ": " + deriv_error);

      const Rule& rule = scheme.rules.at(entry.vertex.nonterminal);
      const Derivation* node = entry.derivation.get();
      require(node->judgement.context == entry.context,
              "derivation root context differs from the entry context");
      require(itype_eq(node->judgement.type, entry.vertex.type),
              "derivation root type differs from the entry type");
      for (const auto& param : rule.params) {
        require(node->rule == RuleTag::Lambda, "missing abstraction for rule parameter");
        require(node->param == param, "abstraction parameter out of order");
        node = node->children[0].get();
      }
      require(node->rule != RuleTag::Lambda, "more abstractions than rule parameters");
      require(term_eq(node->judgement.term, rule.body),
              "derivation body differs from the rewrite rule");

      for (const auto& [name, set] : entry.context.bindings()) {
        require(scheme.nonterminals.count(name),
                "context binds a name that is not a non-terminal");
        for (const auto& [m, type] : set) {
          bool found = false;
          for (int s : entry.successors) {
            require(s >= 0 && s < static_cast<int>(witness.entries.size()),
                    "successor index out of range");
            const auto& sv = witness.entries[static_cast<size_t>(s)].vertex;
            if (sv.nonterminal == name && sv.color == m && itype_eq(sv.type, type)) {
              found = true;
              break;
            }
          }
          require(found, "context binding " + name + " : [" + m.to_string() + "]" +
                             type->printed() + " has no successor entry");
        }
      }
    }

    std::vector<std::vector<int>> succ(witness.entries.size());
    std::vector<int> colors(witness.entries.size());
    for (size_t i = 0; i < witness.entries.size(); i++) {
      succ[i] = witness.entries[i].successors;
      colors[i] = encode(witness.entries[i].vertex.color);
    }
    int bad = -1;
    if (!odd_cycle_free(succ, colors, &bad))
      fail("cycle with odd maximum encoded color through entry " + std::to_string(bad));
    return true;
  } catch (const Failure& f) {
    if (error) *error = f.message;
    return false;
  }
}

}  // namespace horsck
