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

#ifndef HORSCK_PROOFSEARCH_HPP
#define HORSCK_PROOFSEARCH_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "horsck/automata.hpp"
#include "horsck/coltypes.hpp"
#include "horsck/limits.hpp"
#include "horsck/syntax.hpp"

namespace horsck {

// A sequent: context |- term : type :: kind.
struct Judgement {
  Ctx context;
  TermPtr term;
  ITypePtr type;
  Kind kind;
};

enum class RuleTag { Axiom, Delta, App, Lambda };

std::string rule_tag_name(RuleTag tag);
std::optional<RuleTag> rule_tag_from_name(const std::string& name);

struct Derivation;
using DerivationPtr = std::shared_ptr<const Derivation>;

// A finite rule tree. App nodes hold the function premise first, then one
// premise per element of the consumed colored set, tagged with its color.
// Lambda nodes keep the body term in their judgement and record the
// discharged parameter.
struct Derivation {
  RuleTag rule;
  Judgement judgement;
  std::vector<DerivationPtr> children;
  std::vector<Color> premise_colors;  // App only, one per argument premise
  std::string param;                  // Lambda only

  static DerivationPtr make(RuleTag rule, Judgement judgement,
                            std::vector<DerivationPtr> children = {},
                            std::vector<Color> premise_colors = {}, std::string param = "");
};

std::string derivation_to_text(const Derivation& d);

struct SearchOptions {
  bool prune = true;
  Limits limits = Limits::defaults();
};

// The color universe of the automaton: neutral plus every used color.
std::vector<Color> color_universe(const Automaton& automaton);

// Types assigned to a terminal at a result state, one per minimal satisfying
// atom set of the transition formula; argument entries carry the color of
// their state. Empty when the transition is false.
std::vector<ITypePtr> terminal_types(const std::string& terminal, const std::string& state,
                                     const Automaton& automaton, int arity);

// Decides the judgement exactly: a derivation whose synthesized context
// equals the given one, if any exists. The context may bind rule parameters
// and non-terminals only.
std::optional<DerivationPtr> typecheck(const Judgement& judgement, const Scheme& scheme,
                                       const Automaton& automaton,
                                       const SearchOptions& options = {});

// All contexts over non-terminals deriving  ctx |- R(F) : type , each with a
// representative derivation (rule parameters discharged). With prune set,
// only contexts minimal under pointwise colored-set inclusion are kept.
std::map<Ctx, DerivationPtr> enumerate_contexts(const std::string& nonterminal,
                                                const ITypePtr& type, const Scheme& scheme,
                                                const Automaton& automaton,
                                                const SearchOptions& options = {});

}  // namespace horsck

#endif  // HORSCK_PROOFSEARCH_HPP
