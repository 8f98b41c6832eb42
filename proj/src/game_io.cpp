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

#include <json.hpp>
#include <sstream>

#include "horsck/game.hpp"

namespace horsck {

using nlohmann::json;

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

json color_json(Color m) { return m.to_string(); }

Color color_from_json(const json& j) {
  std::string s = j.get<std::string>();
  if (s == "eps") return Color::neutral();
  return Color::level(std::stoi(s));
}

json ctx_json(const Ctx& ctx) {
  json out = json::object();
  for (const auto& [name, set] : ctx.bindings()) {
    json entries = json::array();
    for (const auto& [m, t] : set) entries.push_back(json::array({color_json(m), t->printed()}));
    out[name] = entries;
  }
  return out;
}

Ctx ctx_from_json(const json& j) {
  Ctx out;
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::vector<ISet::Entry> entries;
    for (const auto& pair : it.value())
      entries.emplace_back(color_from_json(pair.at(0)), parse_itype(pair.at(1).get<std::string>()));
    out = out.add(Ctx::singleton(it.key(), ISet::of(std::move(entries))));
  }
  return out;
}

json derivation_json(const Derivation& d) {
  json out;
  out["rule"] = rule_tag_name(d.rule);
  out["judgement"] = {{"context", ctx_json(d.judgement.context)},
                      {"term", d.judgement.term->to_string()},
                      {"type", d.judgement.type->printed()},
                      {"kind", d.judgement.kind.to_string()}};
  if (d.rule == RuleTag::App) {
    json colors = json::array();
    for (const auto& m : d.premise_colors) colors.push_back(color_json(m));
    out["premise_colors"] = colors;
  }
  if (d.rule == RuleTag::Lambda) out["param"] = d.param;
  if (!d.children.empty()) {
    json children = json::array();
    for (const auto& c : d.children) children.push_back(derivation_json(*c));
    out["children"] = children;
  }
  return out;
}

DerivationPtr derivation_from_json(const json& j, const Scheme& scheme,
                                   const std::vector<std::string>& params) {
  auto rule = rule_tag_from_name(j.at("rule").get<std::string>());
  if (!rule) throw std::runtime_error("unknown rule tag in derivation");
  const json& jj = j.at("judgement");
  Judgement judgement{ctx_from_json(jj.at("context")),
                      parse_term(jj.at("term").get<std::string>(), scheme, params),
                      parse_itype(jj.at("type").get<std::string>()),
                      parse_kind(jj.at("kind").get<std::string>())};
  std::vector<DerivationPtr> children;
  if (j.contains("children"))
    for (const auto& c : j.at("children")) children.push_back(derivation_from_json(c, scheme, params));
  std::vector<Color> premise_colors;
  if (j.contains("premise_colors"))
    for (const auto& c : j.at("premise_colors")) premise_colors.push_back(color_from_json(c));
  std::string param = j.contains("param") ? j.at("param").get<std::string>() : "";
  return Derivation::make(*rule, std::move(judgement), std::move(children),
                          std::move(premise_colors), std::move(param));
}

}  // namespace

std::string game_to_dot(const TypingGame& tg) {
  std::ostringstream out;
  out << "digraph typing_game {\n";
  for (size_t v = 0; v < tg.game.size(); v++) {
    const auto& vert = tg.game.vertices[v];
    out << "  v" << v << " [shape=" << (vert.owner == Owner::Eve ? "ellipse" : "box")
        << ", label=\"" << dot_escape(vert.label) << "\\ncolor " << vert.color << "\"";
    if (static_cast<int>(v) == tg.game.initial) out << ", penwidth=2";
    out << "];\n";
  }
  for (size_t v = 0; v < tg.game.size(); v++)
    for (int w : tg.game.edges[v]) out << "  v" << v << " -> v" << w << ";\n";
  out << "}\n";
  return out.str();
}

std::string game_to_json(const TypingGame& tg) {
  json vertices = json::array();
  for (size_t v = 0; v < tg.game.size(); v++) {
    const auto& vert = tg.game.vertices[v];
    vertices.push_back({{"id", v},
                        {"owner", vert.owner == Owner::Eve ? "eve" : "adam"},
                        {"color", vert.color},
                        {"label", vert.label}});
  }
  json edges = json::array();
  for (size_t v = 0; v < tg.game.size(); v++)
    for (int w : tg.game.edges[v]) edges.push_back(json::array({v, w}));
  json out = {{"initial", tg.game.initial}, {"vertices", vertices}, {"edges", edges}};
  return out.dump(2) + "\n";
}

std::string witness_to_json(const Witness& witness, const Scheme& scheme) {
  (void)scheme;
  json vertices = json::array();
  json derivations = json::object();
  for (size_t i = 0; i < witness.entries.size(); i++) {
    const auto& e = witness.entries[i];
    vertices.push_back({{"id", i},
                        {"nonterminal", e.vertex.nonterminal},
                        {"color", color_json(e.vertex.color)},
                        {"encoded_color", encode(e.vertex.color)},
                        {"type", e.vertex.type->printed()},
                        {"context", ctx_json(e.context)},
                        {"successors", e.successors}});
    derivations[std::to_string(i)] = derivation_json(*e.derivation);
  }
  json out = {{"initial", witness.initial},
              {"vertices", vertices},
              {"derivations", derivations},
              {"cycles_max_color", witness.cycles_max_color()}};
  return out.dump(2) + "\n";
}

Witness witness_from_json(const std::string& text, const Scheme& scheme) {
  json j = json::parse(text);
  Witness w;
  w.initial = j.at("initial").get<int>();
  for (const auto& v : j.at("vertices")) {
    Witness::Entry entry;
    entry.vertex.nonterminal = v.at("nonterminal").get<std::string>();
    entry.vertex.color = color_from_json(v.at("color"));
    entry.vertex.type = parse_itype(v.at("type").get<std::string>());
    entry.context = ctx_from_json(v.at("context"));
    entry.successors = v.at("successors").get<std::vector<int>>();
    auto rule_it = scheme.rules.find(entry.vertex.nonterminal);
    std::vector<std::string> params =
        rule_it == scheme.rules.end() ? std::vector<std::string>{} : rule_it->second.params;
    entry.derivation = derivation_from_json(
        j.at("derivations").at(std::to_string(w.entries.size())), scheme, params);
    w.entries.push_back(std::move(entry));
  }
  return w;
}

std::string verdict_to_json(const Verdict& verdict, bool include_timings,
                            const std::string& witness_path) {
  json out;
  out["accepted"] = verdict.accepted;
  out["initial_state"] = verdict.initial_state;
  out["game"] = {{"vertices", verdict.vertices},
                 {"edges", verdict.edges},
                 {"distinct_colors", verdict.distinct_colors}};
  if (verdict.witness) {
    out["witness"] = {{"entries", verdict.witness->entries.size()},
                      {"cycles_max_color", verdict.witness->cycles_max_color()}};
    if (!witness_path.empty()) out["witness"]["path"] = witness_path;
  } else {
    out["witness"] = nullptr;
  }
  if (include_timings)
    out["timing"] = {{"build_ms", verdict.build_ms}, {"solve_ms", verdict.solve_ms}};
  return out.dump(2) + "\n";
}

}  // namespace horsck
