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

#ifndef HORSCK_AUTOMATA_HPP
#define HORSCK_AUTOMATA_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "horsck/syntax.hpp"

namespace horsck {

// The reserved arity-0 terminal standing for a diverging position of the
// value tree. Its transitions default to false for every state but may be
// declared in the automaton file.
inline const std::string kOmegaTerminal = "Omega";

// Positive boolean formulas over (direction, state) atoms; negation-free by
// construction.
class Pbf;
using PbfPtr = std::shared_ptr<const Pbf>;

struct PbfAtom {
  int direction;  // 1-based
  std::string state;

  bool operator<(const PbfAtom& o) const {
    if (direction != o.direction) return direction < o.direction;
    return state < o.state;
  }
  bool operator==(const PbfAtom& o) const {
    return direction == o.direction && state == o.state;
  }
};

class Pbf {
 public:
  enum class Tag { True, False, Atom, And, Or };

  static PbfPtr truth();
  static PbfPtr falsity();
  static PbfPtr atom(int direction, std::string state);
  static PbfPtr conj(PbfPtr lhs, PbfPtr rhs);
  static PbfPtr disj(PbfPtr lhs, PbfPtr rhs);

  Tag tag() const { return tag_; }
  const PbfAtom& atom_value() const { return atom_; }
  const PbfPtr& lhs() const { return lhs_; }
  const PbfPtr& rhs() const { return rhs_; }

  std::string to_string() const;

 private:
  Pbf() = default;
  Tag tag_ = Tag::False;
  PbfAtom atom_{0, ""};
  PbfPtr lhs_;
  PbfPtr rhs_;
};

using AtomSet = std::set<PbfAtom>;

// Disjuncts of the disjunctive normal form: true -> { {} }, false -> {}.
std::set<AtomSet> dnf(const PbfPtr& formula);

// Keeps only the subset-minimal disjuncts (used by the delta typing rule and
// the relational interpretation; supersets are subsumed by monotonicity).
std::set<AtomSet> minimal_disjuncts(const std::set<AtomSet>& disjuncts);

// True iff the valuation making exactly the given atoms true satisfies the
// formula.
bool satisfies(const AtomSet& atoms, const PbfPtr& formula);

struct Automaton {
  std::vector<std::string> states;  // ordered set Q
  std::map<std::pair<std::string, std::string>, PbfPtr> transitions;  // (state, terminal)
  std::map<std::string, int> coloring;  // Omega : Q -> N
  std::string initial;

  // Missing entry means false.
  PbfPtr delta(const std::string& state, const std::string& terminal) const;
  bool has_state(const std::string& q) const;
  int color_of(const std::string& q) const;
  int max_color() const;
  bool all_colors_zero() const;

  // Directions within terminal arities, states declared; throws KindError.
  void validate_against(const Scheme& scheme) const;
};

Automaton parse_automaton(const std::string& text);
Automaton load_automaton(const std::string& path);
std::string print_automaton(const Automaton& automaton);

// Value-tree prefixes: a node with as many children as the terminal arity,
// an unexplored position at the frontier, or a diverging position.
class Tree;
using TreePtr = std::shared_ptr<const Tree>;

class Tree {
 public:
  enum class Tag { Node, Unexplored, Omega };

  static TreePtr node(std::string terminal, std::vector<TreePtr> children);
  static TreePtr unexplored();
  static TreePtr omega();

  Tag tag() const { return tag_; }
  const std::string& terminal() const { return terminal_; }
  const std::vector<TreePtr>& children() const { return children_; }

  bool is_finite() const;  // no unexplored and no diverging positions
  int height() const;      // levels of labelled nodes

  std::string to_text() const;  // indented rendering, '?' and '_|_' leaves
  std::string to_inline() const;

 private:
  Tree() = default;
  Tag tag_ = Tag::Unexplored;
  std::string terminal_;
  std::vector<TreePtr> children_;
};

// The depth-d prefix of the value tree: positions at depth < d carry their
// terminal label, positions at depth d are unexplored, and positions whose
// head reduction exhausts the per-node fuel become Omega.
TreePtr expand_value_tree(const Scheme& scheme, int depth, int fuel);

// Does some run-tree prefix of the automaton from `state` exist on the tree
// down to `depth`? Unexplored nodes accept vacuously; Omega nodes accept per
// the declared Omega-transitions. The tree must be a prefix of depth >= depth.
bool bounded_run_exists(const TreePtr& tree, const Automaton& automaton,
                        const std::string& state, int depth);

// Exact acceptance for order-0 schemes, decided on the finite product parity
// game (non-terminal unfolding x automaton transitions) with the naive solver
// only. Independent of the typing pipeline.
bool regular_oracle(const Scheme& scheme, const Automaton& automaton, const std::string& state,
                    size_t max_strategies = 10000000);

}  // namespace horsck

#endif  // HORSCK_AUTOMATA_HPP
