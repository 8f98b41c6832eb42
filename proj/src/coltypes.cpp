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

#include "horsck/coltypes.hpp"

#include <algorithm>
#include <sstream>

#include "lexer.hpp"

namespace horsck {

Color colmax(Color a, Color b) {
  if (a.is_neutral()) return b;
  if (b.is_neutral()) return a;
  return Color::level(std::max(a.level(), b.level()));
}

// ---------------------------------------------------------------------------
// ISet

namespace {

bool entry_lt(const ISet::Entry& a, const ISet::Entry& b) {
  if (a.first != b.first) return a.first < b.first;
  return itype_lt(a.second, b.second);
}

bool entry_eq(const ISet::Entry& a, const ISet::Entry& b) {
  return a.first == b.first && itype_eq(a.second, b.second);
}

}  // namespace

ISet ISet::of(std::vector<Entry> entries) {
  std::sort(entries.begin(), entries.end(), entry_lt);
  entries.erase(std::unique(entries.begin(), entries.end(), entry_eq), entries.end());
  ISet s;
  s.entries_ = std::move(entries);
  return s;
}

ISet ISet::singleton(Color m, ITypePtr t) { return of({{m, std::move(t)}}); }

bool ISet::contains(Color m, const ITypePtr& t) const {
  for (const auto& [c, ty] : entries_)
    if (c == m && itype_eq(ty, t)) return true;
  return false;
}

bool ISet::subset_of(const ISet& other) const {
  // merge walk over the canonical orders
  auto it = other.entries_.begin();
  for (const auto& e : entries_) {
    while (it != other.entries_.end() && entry_lt(*it, e)) ++it;
    if (it == other.entries_.end() || !entry_eq(*it, e)) return false;
    ++it;
  }
  return true;
}

ISet ISet::union_with(const ISet& other) const {
  std::vector<Entry> all = entries_;
  all.insert(all.end(), other.entries_.begin(), other.entries_.end());
  return of(std::move(all));
}

std::string ISet::to_string() const {
  std::string out = "(/\\";
  for (const auto& [c, ty] : entries_) {
    out += " [" + c.to_string() + "]";
    out += ty->is_state() ? ty->printed() : "(" + ty->printed() + ")";
  }
  return out + ")";
}

bool ISet::operator==(const ISet& o) const {
  if (entries_.size() != o.entries_.size()) return false;
  for (size_t i = 0; i < entries_.size(); i++)
    if (!entry_eq(entries_[i], o.entries_[i])) return false;
  return true;
}

bool ISet::operator<(const ISet& o) const {
  return std::lexicographical_compare(entries_.begin(), entries_.end(), o.entries_.begin(),
                                      o.entries_.end(), entry_lt);
}

// ---------------------------------------------------------------------------
// IType

ITypePtr IType::state(const std::string& q) {
  auto t = std::shared_ptr<IType>(new IType());
  t->name_ = q;
  t->printed_ = q;
  return t;
}

ITypePtr IType::arrow(ISet domain, ITypePtr codomain) {
  auto t = std::shared_ptr<IType>(new IType());
  t->printed_ = domain.to_string() + " -> " + codomain->printed();
  t->domain_ = std::move(domain);
  t->arrow_ = std::move(codomain);
  return t;
}

const std::string& IType::final_state() const {
  const IType* t = this;
  while (!t->is_state()) t = t->arrow_.get();
  return t->name_;
}

int IType::arrow_depth() const {
  int n = 0;
  for (const IType* t = this; !t->is_state(); t = t->arrow_.get()) n++;
  return n;
}

ISet box_apply(Color m, const ISet& tau) {
  std::vector<ISet::Entry> out;
  out.reserve(tau.size());
  for (const auto& [c, ty] : tau) out.emplace_back(colmax(m, c), ty);
  return ISet::of(std::move(out));
}

std::pair<std::vector<ISet>, ITypePtr> peel_arrows(const ITypePtr& t, int n) {
  std::vector<ISet> domains;
  ITypePtr cur = t;
  for (int i = 0; i < n; i++) {
    if (cur->is_state()) throw std::logic_error("peel_arrows: type has too few arrows");
    domains.push_back(cur->domain());
    cur = cur->codomain();
  }
  return {std::move(domains), cur};
}

// ---------------------------------------------------------------------------
// Ctx

Ctx Ctx::singleton(const std::string& name, ISet set) {
  Ctx c;
  c.bindings_.emplace(name, std::move(set));
  return c;
}

const ISet* Ctx::find(const std::string& name) const {
  auto it = bindings_.find(name);
  return it == bindings_.end() ? nullptr : &it->second;
}

Ctx Ctx::add(const Ctx& other) const {
  Ctx out = *this;
  for (const auto& [name, set] : other.bindings_) {
    auto it = out.bindings_.find(name);
    if (it == out.bindings_.end()) {
      out.bindings_.emplace(name, set);
    } else {
      it->second = it->second.union_with(set);
    }
  }
  return out;
}

Ctx Ctx::boxed(Color m) const {
  Ctx out;
  for (const auto& [name, set] : bindings_) out.bindings_.emplace(name, box_apply(m, set));
  return out;
}

Ctx Ctx::without(const std::string& name) const {
  Ctx out = *this;
  out.bindings_.erase(name);
  return out;
}

bool Ctx::leq(const Ctx& other) const {
  for (const auto& [name, set] : bindings_) {
    const ISet* o = other.find(name);
    if (!o) {
      if (!set.empty()) return false;
      continue;
    }
    if (!set.subset_of(*o)) return false;
  }
  return true;
}

std::string Ctx::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, set] : bindings_) {
    if (!first) out += ", ";
    out += name + ": " + set.to_string();
    first = false;
  }
  return out + "}";
}

bool Ctx::operator==(const Ctx& o) const {
  if (bindings_.size() != o.bindings_.size()) return false;
  auto it = o.bindings_.begin();
  for (const auto& [name, set] : bindings_) {
    if (name != it->first || !(set == it->second)) return false;
    ++it;
  }
  return true;
}

bool Ctx::operator<(const Ctx& o) const {
  return std::lexicographical_compare(bindings_.begin(), bindings_.end(), o.bindings_.begin(),
                                      o.bindings_.end(), [](const auto& a, const auto& b) {
                                        if (a.first != b.first) return a.first < b.first;
                                        return a.second < b.second;
                                      });
}

Ctx ctx_add(const Ctx& a, const Ctx& b) { return a.add(b); }

// ---------------------------------------------------------------------------
// Refinement enumeration

bool refines(const ITypePtr& theta, const Kind& kind) {
  if (theta->is_state()) return kind.is_ground();
  if (kind.is_ground()) return false;
  for (const auto& [c, ty] : theta->domain())
    if (!refines(ty, kind.args()[0])) return false;
  return refines(theta->codomain(), kind.suffix(1));
}

Kind kind_from_itype(const ITypePtr& theta) {
  if (theta->is_state()) return Kind::ground();
  Kind arg = theta->domain().empty() ? Kind::ground()
                                     : kind_from_itype(theta->domain().entries().front().second);
  return Kind::arrow(arg, kind_from_itype(theta->codomain()));
}

std::vector<ISet> all_isets(const std::vector<ISet::Entry>& entries, size_t limit) {
  if (entries.size() >= 8 * sizeof(size_t) || (size_t{1} << entries.size()) > limit)
    throw LimitError("colored-set enumeration over " + std::to_string(entries.size()) +
                     " candidate entries exceeds the configured limit");
  std::vector<ISet> out;
  size_t n = entries.size();
  for (size_t mask = 0; mask < (size_t{1} << n); mask++) {
    std::vector<ISet::Entry> chosen;
    for (size_t i = 0; i < n; i++)
      if (mask & (size_t{1} << i)) chosen.push_back(entries[i]);
    out.push_back(ISet::of(std::move(chosen)));
  }
  return out;
}

std::vector<ITypePtr> refinements(const Kind& kind, const std::vector<std::string>& states,
                                  const std::vector<Color>& colors, size_t limit) {
  if (kind.is_ground()) {
    std::vector<ITypePtr> out;
    for (const auto& q : states) out.push_back(IType::state(q));
    std::sort(out.begin(), out.end(), itype_lt);
    return out;
  }
  std::vector<ITypePtr> arg = refinements(kind.args()[0], states, colors, limit);
  std::vector<ITypePtr> rest = refinements(kind.suffix(1), states, colors, limit);
  std::vector<ISet::Entry> entries;
  for (const auto& c : colors)
    for (const auto& t : arg) entries.emplace_back(c, t);
  std::vector<ISet> sets = all_isets(entries, limit);
  if (sets.size() * rest.size() > limit)
    throw LimitError("refinement enumeration for kind " + kind.to_string() +
                     " exceeds the configured limit");
  std::vector<ITypePtr> out;
  out.reserve(sets.size() * rest.size());
  for (const auto& s : sets)
    for (const auto& r : rest) out.push_back(IType::arrow(s, r));
  std::sort(out.begin(), out.end(), itype_lt);
  return out;
}

// ---------------------------------------------------------------------------
// Printed-type parser

namespace {

using detail::Cursor;
using detail::Token;

Color parse_color_tok(Cursor& cur) {
  if (cur.try_keyword("eps")) return Color::neutral();
  return Color::level(cur.expect_number("color"));
}

ITypePtr parse_itype_expr(Cursor& cur);

ITypePtr parse_itype_inner(Cursor& cur) {
  if (cur.try_symbol("(")) {
    ITypePtr t = parse_itype_expr(cur);
    cur.expect_symbol(")");
    return t;
  }
  return IType::state(cur.expect_ident("state"));
}

ITypePtr parse_itype_expr(Cursor& cur) {
  if (cur.peek().type == Token::Symbol && cur.peek().text == "(") {
    // Could be "(/\ ...)" starting an arrow, or a parenthesized type.
    size_t save = cur.pos;
    cur.next();
    if (cur.try_symbol("/\\")) {
      std::vector<ISet::Entry> entries;
      while (cur.try_symbol("[")) {
        Color c = parse_color_tok(cur);
        cur.expect_symbol("]");
        entries.emplace_back(c, parse_itype_inner(cur));
      }
      cur.expect_symbol(")");
      cur.expect_symbol("->");
      return IType::arrow(ISet::of(std::move(entries)), parse_itype_expr(cur));
    }
    cur.pos = save;
    cur.next();
    ITypePtr t = parse_itype_expr(cur);
    cur.expect_symbol(")");
    return t;
  }
  return IType::state(cur.expect_ident("state"));
}

}  // namespace

ITypePtr parse_itype(const std::string& text) {
  auto toks = detail::tokenize(text);
  Cursor cur{toks};
  ITypePtr t = parse_itype_expr(cur);
  if (!cur.at_end()) cur.fail("trailing input after type");
  return t;
}

}  // namespace horsck
