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

#ifndef HORSCK_RELSEM_HPP
#define HORSCK_RELSEM_HPP

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "horsck/automata.hpp"
#include "horsck/syntax.hpp"

namespace horsck {

// Points of the relational interpretation over a base set of states: a base
// state, a tensor pair, a finite multiset, or a function point taking one
// multiset per argument to a base state.
class RelValue {
 public:
  enum class Tag { Base, Pair, Bag, Fun };

  static RelValue base(std::string state);
  static RelValue pair(RelValue first, RelValue second);
  static RelValue bag(std::vector<RelValue> items);  // canonical: sorted
  static RelValue fun(std::vector<RelValue> args, RelValue result);

  Tag tag() const { return tag_; }
  const std::string& state() const { return state_; }
  const std::vector<RelValue>& items() const { return items_; }

  // Does the value inhabit the interpretation of the kind? Ground kinds are
  // base states; an arrow kind is a function point whose arguments are
  // multisets over the argument interpretations.
  bool well_sorted(const Kind& kind) const;

  std::string to_string() const;
  bool operator==(const RelValue& o) const { return to_string() == o.to_string(); }
  bool operator<(const RelValue& o) const { return to_string() < o.to_string(); }

 private:
  Tag tag_ = Tag::Base;
  std::string state_;
  std::vector<RelValue> items_;  // Pair: 2; Bag: members; Fun: args then result
};

// A point of the interpreted transition function: one multiset of states per
// direction, reaching the result state.
struct DeltaElement {
  std::string terminal;
  std::vector<std::vector<std::string>> bags;  // per direction, sorted
  std::string result;

  RelValue as_value() const;
  std::string to_string() const;
  bool operator<(const DeltaElement& o) const;
  bool operator==(const DeltaElement& o) const;
};

// All transition points with minimal satisfying multisets, per terminal of
// the signature and per result state.
std::vector<DeltaElement> interp_delta(const Automaton& automaton,
                                       const std::map<std::string, int>& arities);

// Finite-tree acceptance decided through the relational composition: some
// finite multiset of transition points composes with the interpretation of
// the tree to yield the state. The tree must be finite.
bool interp_term(const TreePtr& tree, const Automaton& automaton, const std::string& q0);

// A finite lattice given by its order relation; meets and joins are computed
// and the lattice laws checked on construction.
class Lattice {
 public:
  explicit Lattice(std::vector<std::vector<bool>> leq);
  static Lattice chain(int height);

  int size() const { return static_cast<int>(leq_.size()); }
  bool leq(int a, int b) const { return leq_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  int meet(int a, int b) const { return meet_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  int join(int a, int b) const { return join_[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
  int bottom() const { return bottom_; }
  int top() const { return top_; }

 private:
  std::vector<std::vector<bool>> leq_;
  std::vector<std::vector<int>> meet_;
  std::vector<std::vector<int>> join_;
  int bottom_ = 0;
  int top_ = 0;
};

struct MonotonicityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The nested alternating fixpoint over n+1 coordinates: greatest fixpoint
// innermost at index 0, alternating outward, greatest again at the (even)
// outermost index. Each stage is a Kleene iteration whose direction is
// checked, flagging non-monotone inputs.
int alt_fixpoint(const std::function<int(const std::vector<int>&)>& f, int n,
                 const Lattice& lattice, int spot_check_samples = 16);

}  // namespace horsck

#endif  // HORSCK_RELSEM_HPP
