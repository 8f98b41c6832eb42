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

#include "horsck/automata.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

#include "horsck/solver.hpp"
#include "lexer.hpp"

namespace horsck {

// ---------------------------------------------------------------------------
// Positive boolean formulas

PbfPtr Pbf::truth() {
  auto p = std::shared_ptr<Pbf>(new Pbf());
  p->tag_ = Tag::True;
  return p;
}
PbfPtr Pbf::falsity() {
  auto p = std::shared_ptr<Pbf>(new Pbf());
  p->tag_ = Tag::False;
  return p;
}
PbfPtr Pbf::atom(int direction, std::string state) {
  auto p = std::shared_ptr<Pbf>(new Pbf());
  p->tag_ = Tag::Atom;
  p->atom_ = {direction, std::move(state)};
  return p;
}
PbfPtr Pbf::conj(PbfPtr lhs, PbfPtr rhs) {
  auto p = std::shared_ptr<Pbf>(new Pbf());
  p->tag_ = Tag::And;
  p->lhs_ = std::move(lhs);
  p->rhs_ = std::move(rhs);
  return p;
}
PbfPtr Pbf::disj(PbfPtr lhs, PbfPtr rhs) {
  auto p = std::shared_ptr<Pbf>(new Pbf());
  p->tag_ = Tag::Or;
  p->lhs_ = std::move(lhs);
  p->rhs_ = std::move(rhs);
  return p;
}

std::string Pbf::to_string() const {
  switch (tag_) {
    case Tag::True:
      return "true";
    case Tag::False:
      return "false";
    case Tag::Atom:
      return "(" + std::to_string(atom_.direction) + "," + atom_.state + ")";
    case Tag::And: {
      auto wrap = [](const PbfPtr& p) {
        std::string s = p->to_string();
        return p->tag() == Tag::Or ? "(" + s + ")" : s;
      };
      return wrap(lhs_) + " /\\ " + wrap(rhs_);
    }
    case Tag::Or:
      return lhs_->to_string() + " \\/ " + rhs_->to_string();
  }
  return "";
}

std::set<AtomSet> dnf(const PbfPtr& formula) {
  switch (formula->tag()) {
    case Pbf::Tag::True:
      return {AtomSet{}};
    case Pbf::Tag::False:
      return {};
    case Pbf::Tag::Atom:
      return {AtomSet{formula->atom_value()}};
    case Pbf::Tag::Or: {
      std::set<AtomSet> out = dnf(formula->lhs());
      for (auto& s : dnf(formula->rhs())) out.insert(s);
      return out;
    }
    case Pbf::Tag::And: {
      std::set<AtomSet> out;
      std::set<AtomSet> left = dnf(formula->lhs());
      std::set<AtomSet> right = dnf(formula->rhs());
      for (const auto& l : left)
        for (const auto& r : right) {
          AtomSet u = l;
          u.insert(r.begin(), r.end());
          out.insert(std::move(u));
        }
      return out;
    }
  }
  return {};
}

std::set<AtomSet> minimal_disjuncts(const std::set<AtomSet>& disjuncts) {
  std::set<AtomSet> out;
  for (const auto& s : disjuncts) {
    bool minimal = true;
    for (const auto& t : disjuncts) {
      if (t.size() < s.size() && std::includes(s.begin(), s.end(), t.begin(), t.end())) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.insert(s);
  }
  return out;
}

bool satisfies(const AtomSet& atoms, const PbfPtr& formula) {
  switch (formula->tag()) {
    case Pbf::Tag::True:
      return true;
    case Pbf::Tag::False:
      return false;
    case Pbf::Tag::Atom:
      return atoms.count(formula->atom_value()) > 0;
    case Pbf::Tag::And:
      return satisfies(atoms, formula->lhs()) && satisfies(atoms, formula->rhs());
    case Pbf::Tag::Or:
      return satisfies(atoms, formula->lhs()) || satisfies(atoms, formula->rhs());
  }
  return false;
}

// ---------------------------------------------------------------------------
// Automaton

PbfPtr Automaton::delta(const std::string& state, const std::string& terminal) const {
  auto it = transitions.find({state, terminal});
  if (it == transitions.end()) return Pbf::falsity();
  return it->second;
}

bool Automaton::has_state(const std::string& q) const {
  return std::find(states.begin(), states.end(), q) != states.end();
}

int Automaton::color_of(const std::string& q) const {
  auto it = coloring.find(q);
  if (it == coloring.end()) throw std::runtime_error("state without color: " + q);
  return it->second;
}

int Automaton::max_color() const {
  int best = 0;
  for (const auto& [q, c] : coloring) best = std::max(best, c);
  return best;
}

bool Automaton::all_colors_zero() const {
  for (const auto& [q, c] : coloring)
    if (c != 0) return false;
  return true;
}

namespace {

void check_directions(const PbfPtr& f, const std::string& terminal, int arity) {
  switch (f->tag()) {
    case Pbf::Tag::Atom: {
      int d = f->atom_value().direction;
      if (d < 1 || d > arity)
        throw KindError("transition for terminal " + terminal + " uses direction " +
                        std::to_string(d) + " outside 1.." + std::to_string(arity));
      return;
    }
    case Pbf::Tag::And:
    case Pbf::Tag::Or:
      check_directions(f->lhs(), terminal, arity);
      check_directions(f->rhs(), terminal, arity);
      return;
    default:
      return;
  }
}

}  // namespace

void Automaton::validate_against(const Scheme& scheme) const {
  for (const auto& [key, f] : transitions) {
    const auto& [state, terminal] = key;
    if (!has_state(state)) throw KindError("transition from undeclared state: " + state);
    auto it = scheme.terminals.find(terminal);
    if (it == scheme.terminals.end()) {
      // the divergence leaf is implicitly an arity-0 terminal
      if (terminal == kOmegaTerminal) {
        check_directions(f, terminal, 0);
        continue;
      }
      throw KindError("transition over unknown terminal: " + terminal);
    }
    check_directions(f, terminal, it->second);
  }
}

// ---------------------------------------------------------------------------
// Automaton parsing

namespace {

using detail::Cursor;
using detail::Token;

PbfPtr parse_pbf_disj(Cursor& cur);

PbfPtr parse_pbf_atom(Cursor& cur) {
  if (cur.try_keyword("true")) return Pbf::truth();
  if (cur.try_keyword("false")) return Pbf::falsity();
  if (cur.try_symbol("(")) {
    if (cur.peek().type == Token::Number) {
      int d = cur.expect_number("direction");
      cur.expect_symbol(",");
      std::string q = cur.expect_ident("state");
      cur.expect_symbol(")");
      return Pbf::atom(d, q);
    }
    PbfPtr inner = parse_pbf_disj(cur);
    cur.expect_symbol(")");
    return inner;
  }
  cur.fail("expected formula");
}

PbfPtr parse_pbf_conj(Cursor& cur) {
  PbfPtr lhs = parse_pbf_atom(cur);
  while (cur.try_symbol("/\\")) lhs = Pbf::conj(lhs, parse_pbf_atom(cur));
  return lhs;
}

PbfPtr parse_pbf_disj(Cursor& cur) {
  PbfPtr lhs = parse_pbf_conj(cur);
  while (cur.try_symbol("\\/")) lhs = Pbf::disj(lhs, parse_pbf_conj(cur));
  return lhs;
}

}  // namespace

Automaton parse_automaton(const std::string& text) {
  auto toks = detail::tokenize(text);
  Cursor cur{toks};
  Automaton aut;

  cur.expect_keyword("states");
  cur.expect_symbol(":");
  while (cur.peek().type == Token::Ident && cur.peek().text != "initial") {
    const Token& tok = cur.peek();
    std::string q = cur.expect_ident("state");
    if (aut.has_state(q)) throw ParseError("duplicate state: " + q, tok.line, tok.col);
    aut.states.push_back(q);
  }
  if (aut.states.empty()) {
    const Token& tok = cur.peek();
    throw ParseError("automaton needs at least one state", tok.line, tok.col);
  }

  cur.expect_keyword("initial");
  cur.expect_symbol(":");
  {
    const Token& tok = cur.peek();
    aut.initial = cur.expect_ident("initial state");
    if (!aut.has_state(aut.initial))
      throw ParseError("initial state not declared: " + aut.initial, tok.line, tok.col);
  }

  cur.expect_keyword("colors");
  cur.expect_symbol(":");
  while (cur.peek().type == Token::Ident && cur.peek().text != "delta") {
    const Token& tok = cur.peek();
    std::string q = cur.expect_ident("state");
    cur.expect_symbol(":");
    int c = cur.expect_number("color");
    if (!aut.has_state(q)) throw ParseError("color for undeclared state: " + q, tok.line, tok.col);
    if (!aut.coloring.emplace(q, c).second)
      throw ParseError("duplicate color for state: " + q, tok.line, tok.col);
  }
  for (const auto& q : aut.states)
    if (!aut.coloring.count(q))
      throw ParseError("missing color for state " + q, cur.peek().line, cur.peek().col);

  cur.expect_keyword("delta");
  cur.expect_symbol(":");
  while (!cur.at_end()) {
    const Token& tok = cur.peek();
    std::string q = cur.expect_ident("state");
    if (!aut.has_state(q))
      throw ParseError("transition from undeclared state: " + q, tok.line, tok.col);
    std::string a = cur.expect_ident("terminal");
    cur.expect_symbol("->");
    PbfPtr f = parse_pbf_disj(cur);
    std::function<void(const PbfPtr&)> check_states = [&](const PbfPtr& p) {
      if (p->tag() == Pbf::Tag::Atom) {
        if (!aut.has_state(p->atom_value().state))
          throw ParseError("transition references undeclared state: " + p->atom_value().state,
                           tok.line, tok.col);
      } else if (p->tag() == Pbf::Tag::And || p->tag() == Pbf::Tag::Or) {
        check_states(p->lhs());
        check_states(p->rhs());
      }
    };
    check_states(f);
    if (!aut.transitions.emplace(std::make_pair(q, a), f).second)
      throw ParseError("duplicate transition for (" + q + ", " + a + ")", tok.line, tok.col);
  }
  return aut;
}

Automaton load_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open automaton file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_automaton(ss.str());
}

std::string print_automaton(const Automaton& aut) {
  std::ostringstream out;
  out << "states:";
  for (const auto& q : aut.states) out << " " << q;
  out << "\ninitial: " << aut.initial << "\ncolors:";
  for (const auto& q : aut.states) out << "  " << q << " : " << aut.color_of(q);
  out << "\ndelta:\n";
  for (const auto& [key, f] : aut.transitions)
    out << "  " << key.first << " " << key.second << " -> " << f->to_string() << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Trees

TreePtr Tree::node(std::string terminal, std::vector<TreePtr> children) {
  auto t = std::shared_ptr<Tree>(new Tree());
  t->tag_ = Tag::Node;
  t->terminal_ = std::move(terminal);
  t->children_ = std::move(children);
  return t;
}
TreePtr Tree::unexplored() {
  static TreePtr instance = std::shared_ptr<Tree>(new Tree());
  return instance;
}
TreePtr Tree::omega() {
  auto make = [] {
    auto t = std::shared_ptr<Tree>(new Tree());
    t->tag_ = Tag::Omega;
    return TreePtr(t);
  };
  static TreePtr instance = make();
  return instance;
}

bool Tree::is_finite() const {
  if (tag_ != Tag::Node) return false;
  for (const auto& c : children_)
    if (!c->is_finite()) return false;
  return true;
}

int Tree::height() const {
  if (tag_ != Tag::Node) return 0;
  int best = 0;
  for (const auto& c : children_) best = std::max(best, c->height());
  return best + 1;
}

namespace {

void render(const Tree& t, int indent, std::string& out) {
  out.append(static_cast<size_t>(indent) * 2, ' ');
  switch (t.tag()) {
    case Tree::Tag::Unexplored:
      out += "?\n";
      return;
    case Tree::Tag::Omega:
      out += "_|_\n";
      return;
    case Tree::Tag::Node:
      out += t.terminal();
      out += "\n";
      for (const auto& c : t.children()) render(*c, indent + 1, out);
      return;
  }
}

}  // namespace

std::string Tree::to_text() const {
  std::string out;
  render(*this, 0, out);
  return out;
}

std::string Tree::to_inline() const {
  switch (tag_) {
    case Tag::Unexplored:
      return "?";
    case Tag::Omega:
      return "_|_";
    case Tag::Node: {
      if (children_.empty()) return terminal_;
      std::string out = terminal_ + "(";
      for (size_t i = 0; i < children_.size(); i++) {
        if (i) out += ", ";
        out += children_[i]->to_inline();
      }
      return out + ")";
    }
  }
  return "";
}

// ---------------------------------------------------------------------------
// Value-tree expansion

namespace {

TermPtr substitute(const TermPtr& term, const std::map<std::string, TermPtr>& subst) {
  switch (term->tag()) {
    case TermTag::Var: {
      auto it = subst.find(term->name());
      if (it == subst.end()) throw KindError("unbound variable during rewriting: " + term->name());
      return it->second;
    }
    case TermTag::App: {
      return Term::app(substitute(term->fun(), subst), substitute(term->arg(), subst));
    }
    default:
      return term;
  }
}

// Rewrites the head non-terminal until a terminal surfaces, spending fuel per
// step; nullptr when the budget runs out.
TermPtr head_reduce(TermPtr term, const Scheme& scheme, int fuel) {
  for (;;) {
    auto [head, args] = spine(term);
    if (head->tag() == TermTag::Terminal) return term;
    if (head->tag() != TermTag::NonTerminal)
      throw KindError("variable in head position during rewriting");
    if (fuel-- <= 0) return nullptr;
    const Rule& rule = scheme.rules.at(head->name());
    std::map<std::string, TermPtr> subst;
    for (size_t i = 0; i < rule.params.size(); i++) subst.emplace(rule.params[i], args[i]);
    TermPtr reduced = substitute(rule.body, subst);
    // ground-kinded heads are always fully applied, so no residual arguments
    for (size_t i = rule.params.size(); i < args.size(); i++)
      reduced = Term::app(reduced, args[i]);
    term = reduced;
  }
}

TreePtr expand_term(const TermPtr& term, const Scheme& scheme, int depth, int fuel) {
  if (depth <= 0) return Tree::unexplored();
  TermPtr reduced = head_reduce(term, scheme, fuel);
  if (!reduced) return Tree::omega();
  auto [head, args] = spine(reduced);
  std::vector<TreePtr> children;
  children.reserve(args.size());
  for (const auto& a : args) children.push_back(expand_term(a, scheme, depth - 1, fuel));
  return Tree::node(head->name(), std::move(children));
}

}  // namespace

TreePtr expand_value_tree(const Scheme& scheme, int depth, int fuel) {
  return expand_term(Term::nonterminal(scheme.start), scheme, depth, fuel);
}

// ---------------------------------------------------------------------------
// Bounded run search

namespace {

int unexplored_depth(const TreePtr& t) {
  switch (t->tag()) {
    case Tree::Tag::Unexplored:
      return 0;
    case Tree::Tag::Omega:
      return std::numeric_limits<int>::max();
    case Tree::Tag::Node: {
      int best = std::numeric_limits<int>::max();
      for (const auto& c : t->children()) {
        int d = unexplored_depth(c);
        if (d != std::numeric_limits<int>::max()) best = std::min(best, d + 1);
      }
      return best;
    }
  }
  return 0;
}

struct RunSearch {
  const Automaton& aut;
  std::map<std::tuple<const Tree*, std::string, int>, bool> memo;

  bool run(const TreePtr& tree, const std::string& q, int depth) {
    if (depth <= 0) return true;
    if (tree->tag() == Tree::Tag::Unexplored) return true;
    auto key = std::make_tuple(tree.get(), q, depth);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    bool ok;
    if (tree->tag() == Tree::Tag::Omega) {
      ok = satisfies({}, aut.delta(q, kOmegaTerminal));
    } else {
      ok = eval(aut.delta(q, tree->terminal()), tree, depth);
    }
    memo.emplace(key, ok);
    return ok;
  }

  // Evaluates the transition formula with atom (i, q') meaning "a run prefix
  // exists on child i from q'"; correct by positivity.
  bool eval(const PbfPtr& f, const TreePtr& tree, int depth) {
    switch (f->tag()) {
      case Pbf::Tag::True:
        return true;
      case Pbf::Tag::False:
        return false;
      case Pbf::Tag::Atom: {
        const auto& a = f->atom_value();
        return run(tree->children().at(static_cast<size_t>(a.direction - 1)), a.state, depth - 1);
      }
      case Pbf::Tag::And:
        return eval(f->lhs(), tree, depth) && eval(f->rhs(), tree, depth);
      case Pbf::Tag::Or:
        return eval(f->lhs(), tree, depth) || eval(f->rhs(), tree, depth);
    }
    return false;
  }
};

}  // namespace

bool bounded_run_exists(const TreePtr& tree, const Automaton& automaton, const std::string& state,
                        int depth) {
  if (!automaton.has_state(state)) throw std::invalid_argument("unknown state: " + state);
  if (unexplored_depth(tree) < depth)
    throw std::invalid_argument("tree prefix shallower than requested depth");
  RunSearch search{automaton, {}};
  return search.run(tree, state, depth);
}

// ---------------------------------------------------------------------------
// Regular oracle for order-0 schemes

bool regular_oracle(const Scheme& scheme, const Automaton& automaton, const std::string& state,
                    size_t max_strategies) {
  for (const auto& [name, kind] : scheme.nonterminals)
    if (!kind.is_ground())
      throw std::invalid_argument("regular oracle needs an order-0 scheme, but " + name +
                                  " has kind " + kind.to_string());
  if (!automaton.has_state(state)) throw std::invalid_argument("unknown state: " + state);

  // Product of the (regular) value-tree unfolding with the automaton:
  // state-vertices (t, q) belong to Eve, who picks a disjunct of the
  // transition formula; Adam then picks an atom of the disjunct. Colors are
  // shifted by two with terminal vertices carrying their state color and
  // unfolding vertices the odd stand-in 1, so a cycle that never consumes a
  // terminal is a diverging position and loses (the divergence leaf rejects
  // by default), while cycles through terminals keep the state parity.
  ParityGame game;
  std::map<std::pair<std::string, std::string>, int> term_vertex;  // (term, q) -> id
  std::vector<std::pair<TermPtr, std::string>> pending;

  auto intern = [&](const TermPtr& t, const std::string& q) {
    auto key = std::make_pair(t->to_string(), q);
    auto it = term_vertex.find(key);
    if (it != term_vertex.end()) return it->second;
    bool unfold = spine(t).first->tag() == TermTag::NonTerminal;
    int color = unfold ? 1 : automaton.color_of(q) + 2;
    int id = game.add_vertex(Owner::Eve, color, key.first + " @ " + q);
    term_vertex.emplace(key, id);
    pending.emplace_back(t, q);
    return id;
  };

  int initial = intern(Term::nonterminal(scheme.start), state);
  while (!pending.empty()) {
    auto [t, q] = pending.back();
    pending.pop_back();
    int id = term_vertex.at({t->to_string(), q});
    auto [head, args] = spine(t);
    if (head->tag() == TermTag::NonTerminal) {
      game.add_edge(id, intern(scheme.rules.at(head->name()).body, q));
      continue;
    }
    for (const auto& disjunct : dnf(automaton.delta(q, head->name()))) {
      int choice = game.add_vertex(Owner::Adam, 0, "");
      game.add_edge(id, choice);
      for (const auto& atom : disjunct)
        game.add_edge(choice, intern(args.at(static_cast<size_t>(atom.direction - 1)), atom.state));
    }
  }

  game.initial = initial;
  NaiveRegions regions = solve_naive(game, max_strategies);
  return regions.eve_wins[static_cast<size_t>(initial)];
}

}  // namespace horsck
