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

#include "horsck/relsem.hpp"

#include <algorithm>
#include <random>

namespace horsck {

// ---------------------------------------------------------------------------
// RelValue

RelValue RelValue::base(std::string state) {
  RelValue v;
  v.tag_ = Tag::Base;
  v.state_ = std::move(state);
  return v;
}

RelValue RelValue::pair(RelValue first, RelValue second) {
  RelValue v;
  v.tag_ = Tag::Pair;
  v.items_ = {std::move(first), std::move(second)};
  return v;
}

RelValue RelValue::bag(std::vector<RelValue> items) {
  RelValue v;
  v.tag_ = Tag::Bag;
  std::sort(items.begin(), items.end());
  v.items_ = std::move(items);
  return v;
}

RelValue RelValue::fun(std::vector<RelValue> args, RelValue result) {
  RelValue v;
  v.tag_ = Tag::Fun;
  v.items_ = std::move(args);
  v.items_.push_back(std::move(result));
  return v;
}

bool RelValue::well_sorted(const Kind& kind) const {
  if (kind.is_ground()) return tag_ == Tag::Base;
  if (tag_ != Tag::Fun) return false;
  if (items_.size() != static_cast<size_t>(kind.arity()) + 1) return false;
  for (int i = 0; i < kind.arity(); i++) {
    const RelValue& arg = items_[static_cast<size_t>(i)];
    if (arg.tag_ != Tag::Bag) return false;
    for (const RelValue& member : arg.items_)
      if (!member.well_sorted(kind.args()[static_cast<size_t>(i)])) return false;
  }
  return items_.back().tag_ == Tag::Base;
}

std::string RelValue::to_string() const {
  switch (tag_) {
    case Tag::Base:
      return state_;
    case Tag::Pair:
      return "(" + items_[0].to_string() + ", " + items_[1].to_string() + ")";
    case Tag::Bag: {
      std::string out = "{|";
      for (size_t i = 0; i < items_.size(); i++) out += (i ? ", " : "") + items_[i].to_string();
      return out + "|}";
    }
    case Tag::Fun: {
      std::string out;
      for (size_t i = 0; i + 1 < items_.size(); i++) out += items_[i].to_string() + " -o ";
      return out + items_.back().to_string();
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// DeltaElement

RelValue DeltaElement::as_value() const {
  std::vector<RelValue> args;
  for (const auto& bag : bags) {
    std::vector<RelValue> members;
    for (const auto& q : bag) members.push_back(RelValue::base(q));
    args.push_back(RelValue::bag(std::move(members)));
  }
  return RelValue::fun(std::move(args), RelValue::base(result));
}

std::string DeltaElement::to_string() const {
  std::string out = terminal + " : (";
  for (size_t i = 0; i < bags.size(); i++) {
    if (i) out += ", ";
    out += "{|";
    for (size_t j = 0; j < bags[i].size(); j++) out += (j ? ", " : "") + bags[i][j];
    out += "|}";
  }
  return out + ") -> " + result;
}

bool DeltaElement::operator<(const DeltaElement& o) const {
  return std::tie(terminal, result, bags) < std::tie(o.terminal, o.result, o.bags);
}
bool DeltaElement::operator==(const DeltaElement& o) const {
  return terminal == o.terminal && result == o.result && bags == o.bags;
}

std::vector<DeltaElement> interp_delta(const Automaton& automaton,
                                       const std::map<std::string, int>& arities) {
  std::vector<DeltaElement> out;
  for (const auto& [terminal, arity] : arities) {
    for (const auto& q : automaton.states) {
      for (const auto& atoms : minimal_disjuncts(dnf(automaton.delta(q, terminal)))) {
        DeltaElement e;
        e.terminal = terminal;
        e.result = q;
        e.bags.resize(static_cast<size_t>(arity));
        for (const auto& atom : atoms)
          e.bags.at(static_cast<size_t>(atom.direction - 1)).push_back(atom.state);
        for (auto& bag : e.bags) std::sort(bag.begin(), bag.end());
        out.push_back(std::move(e));
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

void collect_arities(const TreePtr& tree, std::map<std::string, int>& arities) {
  if (tree->tag() != Tree::Tag::Node) return;
  arities[tree->terminal()] = static_cast<int>(tree->children().size());
  for (const auto& c : tree->children()) collect_arities(c, arities);
}

struct RelSearch {
  // (terminal, result state) -> transition points
  std::map<std::pair<std::string, std::string>, std::vector<const DeltaElement*>> index;
  std::map<std::pair<const Tree*, std::string>, bool> memo;

  bool accept(const TreePtr& tree, const std::string& q) {
    auto key = std::make_pair(tree.get(), q);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool ok = false;
    auto elems = index.find({tree->terminal(), q});
    if (elems != index.end()) {
      for (const DeltaElement* e : elems->second) {
        bool all = true;
        for (size_t i = 0; i < e->bags.size() && all; i++)
          for (const auto& q2 : e->bags[i])
            if (!accept(tree->children()[i], q2)) {
              all = false;
              break;
            }
        if (all) {
          ok = true;
          break;
        }
      }
    }
    memo.emplace(key, ok);
    return ok;
  }
};

}  // namespace

bool interp_term(const TreePtr& tree, const Automaton& automaton, const std::string& q0) {
  if (!tree->is_finite())
    throw std::invalid_argument("relational interpretation needs a finite tree");
  if (!automaton.has_state(q0)) throw std::invalid_argument("unknown state: " + q0);
  std::map<std::string, int> arities;
  collect_arities(tree, arities);
  std::vector<DeltaElement> elements = interp_delta(automaton, arities);
  RelSearch search;
  for (const auto& e : elements) search.index[{e.terminal, e.result}].push_back(&e);
  return search.accept(tree, q0);
}

// ---------------------------------------------------------------------------
// Finite lattices and the alternating fixpoint

Lattice::Lattice(std::vector<std::vector<bool>> leq) : leq_(std::move(leq)) {
  size_t n = leq_.size();
  auto fail = [](const std::string& msg) { throw std::invalid_argument("not a lattice: " + msg); };
  for (size_t a = 0; a < n; a++) {
    if (leq_[a].size() != n) fail("ragged order relation");
    if (!leq_[a][a]) fail("order not reflexive");
  }
  for (size_t a = 0; a < n; a++)
    for (size_t b = 0; b < n; b++) {
      if (leq_[a][b] && leq_[b][a] && a != b) fail("order not antisymmetric");
      for (size_t c = 0; c < n; c++)
        if (leq_[a][b] && leq_[b][c] && !leq_[a][c]) fail("order not transitive");
    }

  meet_.assign(n, std::vector<int>(n, -1));
  join_.assign(n, std::vector<int>(n, -1));
  for (size_t a = 0; a < n; a++)
    for (size_t b = 0; b < n; b++) {
      for (size_t c = 0; c < n; c++) {
        if (leq_[c][a] && leq_[c][b]) {
          bool greatest = true;
          for (size_t d = 0; d < n; d++)
            if (leq_[d][a] && leq_[d][b] && !leq_[d][c]) greatest = false;
          if (greatest) meet_[a][b] = static_cast<int>(c);
        }
        if (leq_[a][c] && leq_[b][c]) {
          bool least = true;
          for (size_t d = 0; d < n; d++)
            if (leq_[a][d] && leq_[b][d] && !leq_[c][d]) least = false;
          if (least) join_[a][b] = static_cast<int>(c);
        }
      }
      if (meet_[a][b] < 0) fail("missing meet");
      if (join_[a][b] < 0) fail("missing join");
    }

  bottom_ = 0;
  top_ = 0;
  for (size_t a = 0; a < n; a++) {
    bottom_ = meet_[static_cast<size_t>(bottom_)][a];
    top_ = join_[static_cast<size_t>(top_)][a];
  }
}

Lattice Lattice::chain(int height) {
  std::vector<std::vector<bool>> leq(static_cast<size_t>(height),
                                     std::vector<bool>(static_cast<size_t>(height), false));
  for (int a = 0; a < height; a++)
    for (int b = a; b < height; b++) leq[static_cast<size_t>(a)][static_cast<size_t>(b)] = true;
  return Lattice(std::move(leq));
}

namespace {

struct FixpointEval {
  const std::function<int(const std::vector<int>&)>& f;
  const Lattice& lattice;
  std::vector<int> env;  // coordinates x_0 .. x_n

  // Fixpoint at level k with env[k+1..n] fixed: greatest for even k,
  // least for odd k, by Kleene iteration from top/bottom.
  int eval(int k) {
    if (k < 0) return f(env);
    bool greatest = (k % 2 == 0);
    int x = greatest ? lattice.top() : lattice.bottom();
    for (;;) {
      env[static_cast<size_t>(k)] = x;
      int next = eval(k - 1);
      if (next == x) return x;
      bool direction_ok = greatest ? lattice.leq(next, x) : lattice.leq(x, next);
      if (!direction_ok)
        throw MonotonicityError("fixpoint iteration at level " + std::to_string(k) +
                                " is not monotone");
      x = next;
    }
  }
};

}  // namespace

int alt_fixpoint(const std::function<int(const std::vector<int>&)>& f, int n,
                 const Lattice& lattice, int spot_check_samples) {
  if (n < 0 || n % 2 != 0)
    throw std::invalid_argument("alternation depth must be even and non-negative");

  if (spot_check_samples > 0) {
    std::mt19937 rng(20260810);
    std::uniform_int_distribution<int> pick(0, lattice.size() - 1);
    std::uniform_int_distribution<int> coord(0, n);
    for (int s = 0; s < spot_check_samples; s++) {
      std::vector<int> lo(static_cast<size_t>(n) + 1);
      for (auto& x : lo) x = pick(rng);
      std::vector<int> hi = lo;
      int i = coord(rng);
      hi[static_cast<size_t>(i)] = lattice.join(lo[static_cast<size_t>(i)], pick(rng));
      if (!lattice.leq(f(lo), f(hi)))
        throw MonotonicityError("function is not monotone in coordinate " + std::to_string(i));
    }
  }

  FixpointEval eval{f, lattice, std::vector<int>(static_cast<size_t>(n) + 1, 0)};
  return eval.eval(n);
}

}  // namespace horsck
