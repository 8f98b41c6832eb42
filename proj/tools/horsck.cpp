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

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "horsck/automata.hpp"
#include "horsck/game.hpp"
#include "horsck/limits.hpp"
#include "horsck/relsem.hpp"
#include "horsck/validate.hpp"

namespace {

// exit codes: 0 accepted, 1 rejected, 2 parse/usage, 3 kind error,
// 4 internal validation failure, 5 resource limit exceeded
constexpr int kOk = 0;
constexpr int kRejected = 1;
constexpr int kUsage = 2;
constexpr int kKind = 3;
constexpr int kInternal = 4;
constexpr int kLimit = 5;

using namespace horsck;

std::string tree_to_dot(const TreePtr& tree) {
  std::ostringstream out;
  out << "digraph value_tree {\n";
  int next = 0;
  std::function<int(const TreePtr&)> walk = [&](const TreePtr& t) {
    int id = next++;
    std::string label = t->tag() == Tree::Tag::Node
                            ? t->terminal()
                            : (t->tag() == Tree::Tag::Omega ? "_|_" : "?");
    out << "  n" << id << " [label=\"" << label << "\"];\n";
    if (t->tag() == Tree::Tag::Node)
      for (const auto& c : t->children()) out << "  n" << id << " -> n" << walk(c) << ";\n";
    return id;
  };
  walk(tree);
  out << "}\n";
  return out.str();
}

Automaton trivial_automaton(const Scheme& scheme) {
  Automaton aut;
  aut.states = {"q"};
  aut.initial = "q";
  aut.coloring["q"] = 1;
  for (const auto& [name, arity] : scheme.terminals) {
    (void)arity;
    aut.transitions[{"q", name}] = Pbf::truth();
  }
  aut.transitions[{"q", kOmegaTerminal}] = Pbf::falsity();
  return aut;
}

struct CommonArgs {
  std::string scheme_path;
  std::string automaton_path;
  std::string state;
  bool json = false;
  bool no_prune = false;
};

int run_check(const CommonArgs& args, const std::string& witness_path, bool validate_flag) {
  Scheme scheme = load_scheme(args.scheme_path);
  Automaton automaton = load_automaton(args.automaton_path);
  std::string q0 = args.state.empty() ? automaton.initial : args.state;

  CheckOptions options;
  options.prune = !args.no_prune;
  options.limits = Limits::from_env();
  Verdict verdict = check(scheme, automaton, q0, options);

  if (verdict.accepted && !witness_path.empty()) {
    std::ofstream out(witness_path);
    if (!out) throw std::runtime_error("cannot write witness file: " + witness_path);
    out << witness_to_json(*verdict.witness, scheme);
  }

  bool revalidated = false;
  if (verdict.accepted && validate_flag) {
    // revalidate the serialized form when a path was given, the in-memory
    // witness otherwise
    Witness w = *verdict.witness;
    if (!witness_path.empty()) {
      std::ifstream in(witness_path);
      std::stringstream ss;
      ss << in.rdbuf();
      w = witness_from_json(ss.str(), scheme);
    }
    std::string error;
    if (!validate_witness(w, scheme, automaton, q0, &error)) {
      std::cerr << "witness validation failed: " << error << "\n";
      return kInternal;
    }
    revalidated = true;
  }

  if (args.json) {
    std::cout << verdict_to_json(verdict, true,
                                 verdict.accepted ? witness_path : std::string{});
  } else {
    std::cout << "accepted: " << (verdict.accepted ? "yes" : "no") << "\n"
              << "initial state: " << q0 << "\n"
              << "game: " << verdict.vertices << " vertices, " << verdict.edges << " edges, "
              << verdict.distinct_colors << " colors (built "
              << static_cast<long>(verdict.build_ms) << " ms, solved "
              << static_cast<long>(verdict.solve_ms) << " ms)\n";
    if (verdict.witness) {
      std::cout << "witness: " << verdict.witness->entries.size() << " entries, cycles max color "
                << verdict.witness->cycles_max_color();
      if (revalidated) std::cout << ", validated";
      std::cout << "\n";
    }
  }
  return verdict.accepted ? kOk : kRejected;
}

int run_expand(const std::string& scheme_path, int depth, int fuel, bool dot) {
  Scheme scheme = load_scheme(scheme_path);
  TreePtr tree = expand_value_tree(scheme, depth, fuel);
  std::cout << (dot ? tree_to_dot(tree) : tree->to_text());
  return kOk;
}

int run_dump_game(const CommonArgs& args, const std::string& format, const std::string& out_path) {
  Scheme scheme = load_scheme(args.scheme_path);
  Automaton automaton = load_automaton(args.automaton_path);
  std::string q0 = args.state.empty() ? automaton.initial : args.state;

  CheckOptions options;
  options.prune = !args.no_prune;
  options.limits = Limits::from_env();
  TypingGame tg = build_game(scheme, automaton, q0, options);

  std::string payload = format == "dot" ? game_to_dot(tg) : game_to_json(tg);
  if (out_path.empty()) {
    std::cout << payload;
  } else {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write: " + out_path);
    out << payload;
  }
  return kOk;
}

int run_oracle(const CommonArgs& args, const std::string& mode, int depth) {
  Scheme scheme = load_scheme(args.scheme_path);
  Automaton automaton = load_automaton(args.automaton_path);
  automaton.validate_against(scheme);
  std::string q0 = args.state.empty() ? automaton.initial : args.state;
  Limits limits = Limits::from_env();

  bool accepted;
  if (mode == "regular") {
    accepted = regular_oracle(scheme, automaton, q0, limits.max_naive_strategies);
  } else if (mode == "bounded") {
    TreePtr tree = expand_value_tree(scheme, depth, limits.fuel);
    accepted = bounded_run_exists(tree, automaton, q0, depth);
  } else if (mode == "relational") {
    TreePtr tree = expand_value_tree(scheme, depth, limits.fuel);
    if (!tree->is_finite()) {
      std::cerr << "tree not finite at given depth/fuel\n";
      return kUsage;
    }
    accepted = interp_term(tree, automaton, q0);
  } else {
    std::cerr << "unknown oracle mode: " << mode << "\n";
    return kUsage;
  }

  if (args.json) {
    nlohmann::json out = {{"mode", mode}, {"accepted", accepted}, {"initial_state", q0}};
    if (mode != "regular") out["depth"] = depth;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "oracle mode " << mode << ": " << (accepted ? "accepted" : "rejected") << "\n";
  }
  return accepted ? kOk : kRejected;
}

int run_check_productivity(const std::string& scheme_path, bool json) {
  Scheme scheme = load_scheme(scheme_path);
  Automaton automaton = trivial_automaton(scheme);
  CheckOptions options;
  options.limits = Limits::from_env();
  Verdict verdict = check(scheme, automaton, "q", options);
  if (json) {
    nlohmann::json out = {{"productive", verdict.accepted}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "productive (best effort): " << (verdict.accepted ? "yes" : "no") << "\n";
  }
  return verdict.accepted ? kOk : kRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"higher-order recursion scheme model checker"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string witness_path;
  bool validate_flag = false;
  int depth = 4;
  int fuel = -1;
  bool dot = false;
  std::string format = "dot";
  std::string out_path;
  std::string mode;
  bool prod_json = false;
  std::string prod_scheme;

  auto* check_cmd = app.add_subcommand("check", "decide acceptance over the value tree");
  check_cmd->add_option("scheme", args.scheme_path, "scheme file")->required();
  check_cmd->add_option("automaton", args.automaton_path, "automaton file")->required();
  check_cmd->add_option("--state", args.state, "initial state (defaults to the automaton's)");
  check_cmd->add_flag("--json", args.json, "machine-readable verdict");
  check_cmd->add_option("--witness", witness_path, "write the witness as JSON");
  check_cmd->add_flag("--no-prune", args.no_prune, "keep non-minimal contexts in the game");
  check_cmd->add_flag("--validate-witness", validate_flag, "re-run the independent validator");

  auto* expand_cmd = app.add_subcommand("expand", "print a prefix of the value tree");
  expand_cmd->add_option("scheme", args.scheme_path, "scheme file")->required();
  expand_cmd->add_option("--depth", depth, "prefix depth")->required();
  expand_cmd->add_option("--fuel", fuel, "head-reduction steps per node");
  expand_cmd->add_flag("--dot", dot, "emit DOT instead of text");

  auto* dump_cmd = app.add_subcommand("dump-game", "emit the typing game");
  dump_cmd->add_option("scheme", args.scheme_path, "scheme file")->required();
  dump_cmd->add_option("automaton", args.automaton_path, "automaton file")->required();
  dump_cmd->add_option("--state", args.state, "initial state");
  dump_cmd->add_option("--format", format, "dot or json")
      ->check(CLI::IsMember({"dot", "json"}));
  dump_cmd->add_flag("--no-prune", args.no_prune, "keep non-minimal contexts");
  dump_cmd->add_option("-o,--output", out_path, "output file (stdout by default)");

  auto* oracle_cmd = app.add_subcommand("oracle", "run an independent semantic oracle");
  oracle_cmd->add_option("scheme", args.scheme_path, "scheme file")->required();
  oracle_cmd->add_option("automaton", args.automaton_path, "automaton file")->required();
  oracle_cmd->add_option("--mode", mode, "bounded, regular or relational")
      ->required()
      ->check(CLI::IsMember({"bounded", "regular", "relational"}));
  oracle_cmd->add_option("--depth", depth, "expansion depth for bounded/relational");
  oracle_cmd->add_option("--state", args.state, "initial state");
  oracle_cmd->add_flag("--json", args.json, "machine-readable verdict");

  auto* prod_cmd = app.add_subcommand("check-productivity",
                                      "best-effort productivity test via the trivial automaton");
  prod_cmd->add_option("scheme", prod_scheme, "scheme file")->required();
  prod_cmd->add_flag("--json", prod_json, "machine-readable verdict");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (fuel < 0) fuel = Limits::from_env().fuel;
    if (check_cmd->parsed()) return run_check(args, witness_path, validate_flag);
    if (expand_cmd->parsed()) return run_expand(args.scheme_path, depth, fuel, dot);
    if (dump_cmd->parsed()) return run_dump_game(args, format, out_path);
    if (oracle_cmd->parsed()) return run_oracle(args, mode, depth);
    if (prod_cmd->parsed()) return run_check_productivity(prod_scheme, prod_json);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const KindError& e) {
    std::cerr << "kind error: " << e.what() << "\n";
    return kKind;
  } catch (const LimitError& e) {
    std::cerr << "limit exceeded: " << e.what() << " (raise via HORSCK_LIMITS)\n";
    return kLimit;
  } catch (const SolverError& e) {
    std::cerr << "solver limit: " << e.what() << "\n";
    return kLimit;
  } catch (const InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
