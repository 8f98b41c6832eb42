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

#include "horsck/proofsearch.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace horsck {

std::string rule_tag_name(RuleTag tag) {
  switch (tag) {
    case RuleTag::Axiom:
      return "axiom";
    case RuleTag::Delta:
      return "delta";
    case RuleTag::App:
      return "app";
    case RuleTag::Lambda:
      return "lambda";
  }
  return "";
}

std::optional<RuleTag> rule_tag_from_name(const std::string& name) {
  if (name == "axiom") return RuleTag::Axiom;
  if (name == "delta") return RuleTag::Delta;
  if (name == "app") return RuleTag::App;
  if (name == "lambda") return RuleTag::Lambda;
  return std::nullopt;
}

DerivationPtr Derivation::make(RuleTag rule, Judgement judgement,
                               std::vector<DerivationPtr> children,
                               std::vector<Color> premise_colors, std::string param) {
  auto d = std::make_shared<Derivation>();
  d->rule = rule;
  d->judgement = std::move(judgement);
  d->children = std::move(children);
  d->premise_colors = std::move(premise_colors);
  d->param = std::move(param);
  return d;
}

namespace {

void render_derivation(const Derivation& d, int indent, std::ostream& out) {
  out << std::string(static_cast<size_t>(indent) * 2, ' ') << rule_tag_name(d.rule);
  if (d.rule == RuleTag::Lambda) out << " " << d.param;
  out << ": " << d.judgement.context.to_string() << " |- " << d.judgement.term->to_string()
      << " : " << d.judgement.type->printed() << " :: " << d.judgement.kind.to_string();
  if (!d.premise_colors.empty()) {
    out << "  [";
    for (size_t i = 0; i < d.premise_colors.size(); i++)
      out << (i ? " " : "") << d.premise_colors[i].to_string();
    out << "]";
  }
  out << "\n";
  for (const auto& c : d.children) render_derivation(*c, indent + 1, out);
}

}  // namespace

std::string derivation_to_text(const Derivation& d) {
  std::ostringstream out;
  render_derivation(d, 0, out);
  return out.str();
}

std::vector<Color> color_universe(const Automaton& automaton) {
  std::vector<Color> out{Color::neutral()};
  for (const auto& [q, c] : automaton.coloring) out.push_back(Color::level(c));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<ITypePtr> terminal_types(const std::string& terminal, const std::string& state,
                                     const Automaton& automaton, int arity) {
  std::vector<ITypePtr> out;
  for (const auto& atoms : minimal_disjuncts(dnf(automaton.delta(state, terminal)))) {
    std::vector<std::vector<ISet::Entry>> per_direction(static_cast<size_t>(arity));
    for (const auto& atom : atoms)
      per_direction.at(static_cast<size_t>(atom.direction - 1))
          .emplace_back(Color::level(automaton.color_of(atom.state)), IType::state(atom.state));
    ITypePtr t = IType::state(state);
    for (int i = arity - 1; i >= 0; i--)
      t = IType::arrow(ISet::of(per_direction[static_cast<size_t>(i)]), t);
    out.push_back(t);
  }
  std::sort(out.begin(), out.end(), itype_lt);
  out.erase(std::unique(out.begin(), out.end(), itype_eq), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Goal-directed derivation enumeration.
//
// The search synthesizes contexts bottom-up along the applicative spine while
// threading the accumulated box color top-down: the binding a head leaf
// finally contributes is its axiom binding boxed by every enclosing argument
// premise, which is exactly the running colmax. Rule parameters are filtered
// against their declared colored sets on the spot, so the abstraction rule's
// inclusion condition holds by construction.

namespace {

struct ResultSet {
  // context -> first derivation found, in canonical context order
  std::map<Ctx, DerivationPtr> results;
};

using ResultPtr = std::shared_ptr<const ResultSet>;

ITypePtr arrow_suffix(const ITypePtr& t, int n) {
  ITypePtr cur = t;
  for (int i = 0; i < n; i++) {
    if (cur->is_state()) return nullptr;
    cur = cur->codomain();
  }
  return cur;
}

struct Engine {
  const Scheme& scheme;
  const Automaton& automaton;
  const Limits& limits;
  std::vector<Color> colors;
  std::map<std::string, Kind> kind_env;
  std::map<std::string, ISet> param_bounds;
  // typecheck mode: every axiom binding (including non-terminals) must appear
  // in this context
  const Ctx* exact_bound = nullptr;

  std::map<std::tuple<const Term*, std::string, std::string>, ResultPtr> memo;
  std::map<std::string, std::vector<ITypePtr>> refinement_cache;

  Engine(const Scheme& s, const Automaton& a, const Limits& l) : scheme(s), automaton(a), limits(l) {
    colors = color_universe(a);
    for (const auto& [name, arity] : s.terminals)
      kind_env.emplace(name, Kind(std::vector<Kind>(static_cast<size_t>(arity), Kind::ground())));
    for (const auto& [name, kind] : s.nonterminals) kind_env.emplace(name, kind);
  }

  const std::vector<ITypePtr>& refinements_of(const Kind& kind) {
    auto key = kind.to_string();
    auto it = refinement_cache.find(key);
    if (it != refinement_cache.end()) return it->second;
    auto table = refinements(kind, automaton.states, colors, limits.max_refinements);
    return refinement_cache.emplace(key, std::move(table)).first->second;
  }

  const ISet* bound_for(const TermPtr& head) const {
    static const ISet empty;
    if (head->tag() == TermTag::Var) {
      auto it = param_bounds.find(head->name());
      if (it != param_bounds.end()) return &it->second;
      if (exact_bound) return &empty;
      throw std::logic_error("unbound parameter in search: " + head->name());
    }
    if (exact_bound) {
      const ISet* s = exact_bound->find(head->name());
      return s ? s : &empty;
    }
    return nullptr;  // free non-terminal
  }

  // Result types a derivation could assign to this term, used to assemble
  // candidate demands on argument positions.
  std::vector<ITypePtr> candidate_goal_types(const TermPtr& term, Color sub_color) {
    auto [head, args] = spine(term);
    int k = static_cast<int>(args.size());
    std::vector<ITypePtr> out;
    if (head->tag() == TermTag::Terminal) {
      int arity = scheme.terminals.at(head->name());
      for (const auto& q : automaton.states)
        for (const auto& full : terminal_types(head->name(), q, automaton, arity))
          if (ITypePtr s = arrow_suffix(full, k)) out.push_back(s);
    } else if (const ISet* bound = bound_for(head)) {
      for (const auto& [m, full] : *bound)
        if (m == sub_color)
          if (ITypePtr s = arrow_suffix(full, k)) out.push_back(s);
    } else {
      // Free non-terminal head: any refinement of the term's kind can be
      // assumed, the game will make the assumption falsifiable.
      Kind kind = kind_of(term, kind_env);
      for (const auto& t : refinements_of(kind)) out.push_back(t);
    }
    std::sort(out.begin(), out.end(), itype_lt);
    out.erase(std::unique(out.begin(), out.end(), itype_eq), out.end());
    return out;
  }

  // Demand entries (m, theta) on an argument that admit a derivation.
  std::vector<ISet::Entry> demand_candidates(const TermPtr& arg, Color acc) {
    std::vector<ISet::Entry> out;
    for (const Color& m : colors) {
      Color sub = colmax(acc, m);
      for (const auto& t : candidate_goal_types(arg, sub))
        if (!enumerate(arg, t, sub).results.empty()) out.emplace_back(m, t);
    }
    return out;
  }

  // Candidate full head types reaching the goal after k applications.
  std::vector<ITypePtr> head_candidates(const TermPtr& head, const std::vector<TermPtr>& args,
                                        const ITypePtr& goal, Color acc) {
    int k = static_cast<int>(args.size());
    std::vector<ITypePtr> out;
    if (head->tag() == TermTag::Terminal) {
      int arity = scheme.terminals.at(head->name());
      for (const auto& full : terminal_types(head->name(), goal->final_state(), automaton, arity)) {
        ITypePtr s = arrow_suffix(full, k);
        if (s && itype_eq(s, goal)) out.push_back(full);
      }
    } else if (const ISet* bound = bound_for(head)) {
      for (const auto& [m, full] : *bound) {
        if (m != acc) continue;
        ITypePtr s = arrow_suffix(full, k);
        if (s && itype_eq(s, goal)) out.push_back(full);
      }
      std::sort(out.begin(), out.end(), itype_lt);
      out.erase(std::unique(out.begin(), out.end(), itype_eq), out.end());
    } else {
      // Construct the demanded sets argument by argument from derivable
      // demands.
      std::vector<std::vector<ISet>> per_arg;
      for (const auto& arg : args)
        per_arg.push_back(all_isets(demand_candidates(arg, acc), limits.max_demand_subsets));
      std::vector<size_t> pick(per_arg.size(), 0);
      for (;;) {
        ITypePtr t = goal;
        for (int i = k - 1; i >= 0; i--)
          t = IType::arrow(per_arg[static_cast<size_t>(i)][pick[static_cast<size_t>(i)]], t);
        out.push_back(t);
        size_t i = 0;
        while (i < pick.size()) {
          pick[i]++;
          if (pick[i] < per_arg[i].size()) break;
          pick[i] = 0;
          i++;
        }
        if (i == pick.size()) break;
      }
    }
    return out;
  }

  const ResultSet& enumerate(const TermPtr& term, const ITypePtr& goal, Color acc) {
    auto key = std::make_tuple(term.get(), goal->printed(), acc.to_string());
    auto it = memo.find(key);
    if (it != memo.end()) return *it->second;
    // Reserve the slot against re-entry; the term recursion is well-founded,
    // so a plain insert-after-compute is enough.
    auto result = std::make_shared<ResultSet>();
    compute(term, goal, acc, *result);
    memo.emplace(key, result);
    return *result;
  }

  void compute(const TermPtr& term, const ITypePtr& goal, Color acc, ResultSet& out) {
    auto [head, args] = spine(term);
    int k = static_cast<int>(args.size());

    for (const ITypePtr& head_type : head_candidates(head, args, goal, acc)) {
      auto [domains, rest] = peel_arrows(head_type, k);
      if (!itype_eq(rest, goal)) continue;

      Ctx head_ctx;
      DerivationPtr head_deriv;
      Kind head_kind = kind_of(head, kind_env);
      if (head->tag() == TermTag::Terminal) {
        head_deriv = Derivation::make(RuleTag::Delta, {Ctx{}, head, head_type, head_kind});
      } else {
        head_ctx = Ctx::singleton(head->name(), ISet::singleton(Color::neutral(), head_type));
        head_deriv = Derivation::make(RuleTag::Axiom, {head_ctx, head, head_type, head_kind});
      }

      // Fold argument premises one demand at a time, deduplicating on the
      // accumulated context so the cross product stays within the number of
      // distinct results.
      struct Choice {
        Ctx ctx;
        std::vector<DerivationPtr> derivs;
      };
      std::map<Ctx, std::vector<DerivationPtr>> accs;
      accs.emplace(head_ctx, std::vector<DerivationPtr>{});
      bool dead = false;
      for (int i = 0; i < k && !dead; i++) {
        for (const auto& [m, theta] : domains[static_cast<size_t>(i)]) {
          const ResultSet& sub = enumerate(args[static_cast<size_t>(i)], theta, colmax(acc, m));
          if (sub.results.empty()) {
            dead = true;
            break;
          }
          std::map<Ctx, std::vector<DerivationPtr>> next;
          for (const auto& [ctx_acc, derivs] : accs) {
            for (const auto& [sub_ctx, sub_deriv] : sub.results) {
              Ctx combined = ctx_acc.add(sub_ctx.boxed(m));
              auto slot = next.find(combined);
              if (slot == next.end()) {
                std::vector<DerivationPtr> ext = derivs;
                ext.push_back(sub_deriv);
                next.emplace(std::move(combined), std::move(ext));
                if (next.size() > limits.max_contexts)
                  throw LimitError("proof search exceeded the context limit for " +
                                   term->to_string());
              }
            }
          }
          accs = std::move(next);
        }
      }
      if (dead) continue;

      for (const auto& [total_ctx, chosen] : accs) {
        if (out.results.count(total_ctx)) continue;
        out.results.emplace(total_ctx, build_apps(head_deriv, head_ctx, args, domains, chosen));
        if (out.results.size() > limits.max_contexts)
          throw LimitError("proof search exceeded the context limit for " + term->to_string());
      }
    }
  }

  DerivationPtr build_apps(const DerivationPtr& head_deriv, const Ctx& head_ctx,
                           const std::vector<TermPtr>& args, const std::vector<ISet>& domains,
                           const std::vector<DerivationPtr>& chosen) {
    DerivationPtr cur = head_deriv;
    Ctx ctx = head_ctx;
    size_t next_choice = 0;
    for (size_t i = 0; i < args.size(); i++) {
      std::vector<DerivationPtr> children{cur};
      std::vector<Color> premise_colors;
      for (const auto& [m, theta] : domains[i]) {
        (void)theta;
        const DerivationPtr& d = chosen.at(next_choice++);
        ctx = ctx.add(d->judgement.context.boxed(m));
        children.push_back(d);
        premise_colors.push_back(m);
      }
      TermPtr term = Term::app(cur->judgement.term, args[i]);
      ITypePtr type = cur->judgement.type->codomain();
      Kind kind = cur->judgement.kind.suffix(1);
      cur = Derivation::make(RuleTag::App, {ctx, term, type, kind}, std::move(children),
                             std::move(premise_colors));
    }
    return cur;
  }
};

}  // namespace

std::optional<DerivationPtr> typecheck(const Judgement& judgement, const Scheme& scheme,
                                       const Automaton& automaton, const SearchOptions& options) {
  Engine engine(scheme, automaton, options.limits);
  engine.exact_bound = &judgement.context;
  for (const auto& [name, set] : judgement.context.bindings()) {
    if (!scheme.nonterminals.count(name)) {
      engine.param_bounds.emplace(name, set);
      if (!set.empty())
        engine.kind_env[name] = kind_from_itype(set.entries().front().second);
    }
  }
  const ResultSet& results = engine.enumerate(judgement.term, judgement.type, Color::neutral());
  auto it = results.results.find(judgement.context);
  if (it == results.results.end()) return std::nullopt;
  return it->second;
}

std::map<Ctx, DerivationPtr> enumerate_contexts(const std::string& nonterminal,
                                                const ITypePtr& type, const Scheme& scheme,
                                                const Automaton& automaton,
                                                const SearchOptions& options) {
  auto kind_it = scheme.nonterminals.find(nonterminal);
  if (kind_it == scheme.nonterminals.end())
    throw std::invalid_argument("unknown non-terminal: " + nonterminal);
  const Kind& kind = kind_it->second;
  if (!refines(type, kind))
    throw std::invalid_argument("type " + type->printed() + " does not refine kind " +
                                kind.to_string());
  const Rule& rule = scheme.rules.at(nonterminal);

  Engine engine(scheme, automaton, options.limits);
  auto [param_sets, result_type] = peel_arrows(type, kind.arity());
  for (size_t i = 0; i < rule.params.size(); i++) {
    engine.param_bounds.emplace(rule.params[i], param_sets[i]);
    engine.kind_env[rule.params[i]] = kind.args()[i];
  }

  const ResultSet& body = engine.enumerate(rule.body, result_type, Color::neutral());

  std::map<Ctx, DerivationPtr> out;
  for (const auto& [ctx, deriv] : body.results) {
    // discharge the parameters, innermost abstraction first
    Ctx cur_ctx = ctx;
    DerivationPtr cur = deriv;
    ITypePtr cur_type = result_type;
    for (int i = kind.arity() - 1; i >= 0; i--) {
      const std::string& x = rule.params[static_cast<size_t>(i)];
      cur_ctx = cur_ctx.without(x);
      cur_type = IType::arrow(param_sets[static_cast<size_t>(i)], cur_type);
      cur = Derivation::make(RuleTag::Lambda, {cur_ctx, rule.body, cur_type, kind.suffix(i)},
                             {cur}, {}, x);
    }
    out.emplace(cur_ctx, cur);
  }

  if (options.prune) {
    // A strictly dominated context has strictly larger weight than its
    // dominator, so scanning by ascending weight needs to compare against the
    // minimal set only.
    auto weight = [](const Ctx& ctx) {
      size_t w = 0;
      for (const auto& [name, set] : ctx.bindings()) w += set.size();
      return w;
    };
    std::vector<const std::pair<const Ctx, DerivationPtr>*> items;
    items.reserve(out.size());
    for (const auto& kv : out) items.push_back(&kv);
    std::stable_sort(items.begin(), items.end(),
                     [&](const auto* a, const auto* b) {
                       return weight(a->first) < weight(b->first);
                     });
    std::map<Ctx, DerivationPtr> pruned;
    std::vector<const Ctx*> minimal;
    for (const auto* kv : items) {
      bool dominated = false;
      for (const Ctx* m : minimal)
        if (m->leq(kv->first)) {
          dominated = true;
          break;
        }
      if (!dominated) {
        auto inserted = pruned.emplace(kv->first, kv->second).first;
        minimal.push_back(&inserted->first);
      }
    }
    return pruned;
  }
  return out;
}

}  // namespace horsck
