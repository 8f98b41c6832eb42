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

#ifndef HORSCK_COLTYPES_HPP
#define HORSCK_COLTYPES_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "horsck/syntax.hpp"

namespace horsck {

// A color is either the neutral element or a natural-number level. Neutral
// acts as identity for colmax and marks the absence of a coloring annotation.
class Color {
 public:
  static Color neutral() { return Color(-1); }
  static Color level(int k) { return Color(k); }

  bool is_neutral() const { return value_ < 0; }
  int level() const { return value_; }

  // Neutral sorts after every level; levels sort ascending.
  bool operator==(const Color& o) const { return value_ == o.value_; }
  bool operator!=(const Color& o) const { return value_ != o.value_; }
  bool operator<(const Color& o) const {
    if (is_neutral() != o.is_neutral()) return !is_neutral();
    return value_ < o.value_;
  }

  std::string to_string() const { return is_neutral() ? "eps" : std::to_string(value_); }

 private:
  explicit Color(int v) : value_(v) {}
  int value_;
};

// The commutative monoid (Col, max, neutral).
Color colmax(Color a, Color b);

class IType;
using ITypePtr = std::shared_ptr<const IType>;

// Canonical set of colored types: duplicate-free and ordered by
// (color, printed type). Insertion of a present pair is the identity.
class ISet {
 public:
  using Entry = std::pair<Color, ITypePtr>;

  ISet() = default;
  static ISet of(std::vector<Entry> entries);
  static ISet singleton(Color m, ITypePtr t);

  bool empty() const { return entries_.empty(); }
  size_t size() const { return entries_.size(); }
  const std::vector<Entry>& entries() const { return entries_; }
  auto begin() const { return entries_.begin(); }
  auto end() const { return entries_.end(); }

  bool contains(Color m, const ITypePtr& t) const;
  bool subset_of(const ISet& other) const;
  ISet union_with(const ISet& other) const;

  std::string to_string() const;  // e.g. "(/\ [0]q0 [eps]q1)"

  bool operator==(const ISet& o) const;
  bool operator<(const ISet& o) const;

 private:
  std::vector<Entry> entries_;
};

// Colored intersection types: a state refining the ground kind, or an arrow
// from a colored set to a type.
class IType {
 public:
  static ITypePtr state(const std::string& q);
  static ITypePtr arrow(ISet domain, ITypePtr codomain);

  bool is_state() const { return arrow_ == nullptr; }
  const std::string& state() const { return name_; }
  const ISet& domain() const { return domain_; }
  const ITypePtr& codomain() const { return arrow_; }

  // The state at the end of the arrow chain.
  const std::string& final_state() const;
  int arrow_depth() const;

  // Cached canonical rendering; also the equality/order key.
  const std::string& printed() const { return printed_; }

 private:
  IType() = default;
  std::string name_;
  ISet domain_;
  ITypePtr arrow_;
  std::string printed_;
};

inline bool itype_eq(const ITypePtr& a, const ITypePtr& b) { return a->printed() == b->printed(); }
inline bool itype_lt(const ITypePtr& a, const ITypePtr& b) { return a->printed() < b->printed(); }

// The color modality acting on a colored set: every entry color becomes its
// colmax with m, re-canonicalized (collisions merge).
ISet box_apply(Color m, const ISet& tau);

// Peels the leading ISets of an arrow chain: returns the domains consumed and
// the remaining codomain after n arrows.
std::pair<std::vector<ISet>, ITypePtr> peel_arrows(const ITypePtr& t, int n);

// Typing contexts: names (variables or non-terminals) bound to colored sets.
class Ctx {
 public:
  Ctx() = default;

  static Ctx singleton(const std::string& name, ISet set);

  bool empty() const { return bindings_.empty(); }
  const std::map<std::string, ISet>& bindings() const { return bindings_; }
  const ISet* find(const std::string& name) const;

  // Pointwise set union of bindings.
  Ctx add(const Ctx& other) const;
  Ctx boxed(Color m) const;
  Ctx without(const std::string& name) const;

  // Pointwise ISet inclusion.
  bool leq(const Ctx& other) const;

  std::string to_string() const;  // e.g. "{L: (/\ [0]q0)}"

  bool operator==(const Ctx& o) const;
  bool operator<(const Ctx& o) const;

 private:
  std::map<std::string, ISet> bindings_;
};

Ctx ctx_add(const Ctx& a, const Ctx& b);

// Does theta refine the kind?
bool refines(const ITypePtr& theta, const Kind& kind);

// Reconstructs a kind from a type's arrow structure; an empty domain reads as
// a ground argument (the structure does not determine it).
Kind kind_from_itype(const ITypePtr& theta);

// The complete finite set of types refining the kind, with colored sets drawn
// from subsets of colors x refinements of the argument kinds. Exponential in
// the kind order; guarded by the limit.
std::vector<ITypePtr> refinements(const Kind& kind, const std::vector<std::string>& states,
                                  const std::vector<Color>& colors, size_t limit);

// All subsets of the given entries as canonical ISets, in a deterministic
// order. Guarded: throws if 2^n would exceed the limit.
std::vector<ISet> all_isets(const std::vector<ISet::Entry>& entries, size_t limit);

// Parses the canonical printed form back into a type ("q0",
// "(/\ [0]q0 [eps]q1) -> q0").
ITypePtr parse_itype(const std::string& text);

struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace horsck

#endif  // HORSCK_COLTYPES_HPP
