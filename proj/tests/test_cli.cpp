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

#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <json.hpp>

#include "horsck/syntax.hpp"
#include "testutil.hpp"

using horsck::testutil::corpus_path;
using horsck::testutil::run_cli;

namespace {

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = "/tmp/horsck_test_" + name;
  std::ofstream out(path);
  out << content;
  return path;
}

}  // namespace

TEST_CASE("check exit codes and JSON") {
  std::string accept_s = write_temp("loop.hors",
      "terminals: a : 1\nnonterminals: S : o\nstart: S\nrules:\n  S -> a S\n");
  std::string accept_a = write_temp("loop0.apt",
      "states: q\ninitial: q\ncolors: q : 0\ndelta:\n  q a -> (1,q)\n");
  std::string reject_a = write_temp("loop1.apt",
      "states: q\ninitial: q\ncolors: q : 1\ndelta:\n  q a -> (1,q)\n");

  auto accepted = run_cli("check " + accept_s + " " + accept_a + " --json");
  CHECK(accepted.exit_code == 0);
  auto parsed = nlohmann::json::parse(accepted.output);
  CHECK(parsed.at("accepted") == true);
  CHECK(parsed.at("initial_state") == "q");
  CHECK(parsed.at("witness").at("cycles_max_color") == 2);

  auto rejected = run_cli("check " + accept_s + " " + reject_a + " --json");
  CHECK(rejected.exit_code == 1);
  CHECK(nlohmann::json::parse(rejected.output).at("accepted") == false);

  SUBCASE("byte-stable output modulo timing") {
    auto again = run_cli("check " + accept_s + " " + accept_a + " --json");
    auto strip = [](const std::string& text) {
      auto j = nlohmann::json::parse(text);
      j.erase("timing");
      return j.dump(2);
    };
    CHECK(strip(again.output) == strip(accepted.output));
  }
  SUBCASE("malformed scheme exits 2") {
    std::string bad = write_temp("bad.hors", "terminals a : 1\n");
    CHECK(run_cli("check " + bad + " " + accept_a).exit_code == 2);
  }
  SUBCASE("kind error exits 3") {
    std::string bad = write_temp("kind.hors",
        "terminals: a : 2\nnonterminals: S : o\nstart: S\nrules:\n  S -> a S\n");
    CHECK(run_cli("check " + bad + " " + accept_a).exit_code == 3);
  }
  SUBCASE("usage error exits 2") {
    CHECK(run_cli("check only-one-file").exit_code == 2);
    CHECK(run_cli("frobnicate").exit_code == 2);
  }
  SUBCASE("witness file plus revalidation") {
    std::string out = "/tmp/horsck_test_witness.json";
    std::remove(out.c_str());
    auto r = run_cli("check " + accept_s + " " + accept_a + " --witness " + out +
                     " --validate-witness");
    CHECK(r.exit_code == 0);
    std::ifstream in(out);
    CHECK(in.good());
    auto w = nlohmann::json::parse(in);
    CHECK(w.at("cycles_max_color") == 2);
    CHECK(w.at("vertices").size() == 2);
  }
}

TEST_CASE("expand output") {
  auto two = run_cli("expand " + corpus_path("two-branch.hors") + " --depth 2");
  CHECK(two.exit_code == 0);
  CHECK(two.output == "a\n  b\n    ?\n  a\n    ?\n    ?\n");

  auto zero = run_cli("expand " + corpus_path("two-branch.hors") + " --depth 0");
  CHECK(zero.output == "?\n");

  std::string loop = write_temp("diverge.hors",
      "terminals: a : 1\nnonterminals: S : o\nstart: S\nrules:\n  S -> S\n");
  auto omega = run_cli("expand " + loop + " --depth 3 --fuel 100");
  CHECK(omega.output == "_|_\n");

  auto dot = run_cli("expand " + corpus_path("two-branch.hors") + " --depth 2 --dot");
  CHECK(dot.output.find("digraph") != std::string::npos);
}

TEST_CASE("oracle modes") {
  std::string s = corpus_path("list-producer.hors");
  std::string a = corpus_path("list-producer-safety.apt");

  auto bounded = run_cli("oracle " + s + " " + a + " --mode bounded --depth 4 --json");
  CHECK(bounded.exit_code == 0);
  CHECK(nlohmann::json::parse(bounded.output).at("accepted") == true);

  // the value tree is infinite, so the relational mode cannot run on it
  auto relational = run_cli("oracle " + s + " " + a + " --mode relational --depth 4");
  CHECK(relational.exit_code == 2);

  // regular mode needs an order-0 scheme
  auto regular_bad = run_cli("oracle " + s + " " + a + " --mode regular");
  CHECK(regular_bad.exit_code == 2);

  std::string loop_s = write_temp("loop2.hors",
      "terminals: a : 1\nnonterminals: S : o\nstart: S\nrules:\n  S -> a S\n");
  std::string loop_a = write_temp("loop2.apt",
      "states: q\ninitial: q\ncolors: q : 0\ndelta:\n  q a -> (1,q)\n");
  CHECK(run_cli("oracle " + loop_s + " " + loop_a + " --mode regular").exit_code == 0);

  // a finite tree accepts the relational mode
  std::string fin_s = write_temp("finite.hors",
      "terminals: b : 1   c : 0\nnonterminals: S : o\nstart: S\nrules:\n  S -> b c\n");
  std::string fin_a = write_temp("finite.apt",
      "states: q\ninitial: q\ncolors: q : 0\ndelta:\n  q b -> (1,q)\n  q c -> true\n");
  CHECK(run_cli("oracle " + fin_s + " " + fin_a + " --mode relational --depth 5").exit_code == 0);
}

TEST_CASE("dump-game formats") {
  std::string s = corpus_path("two-branch.hors");
  std::string a = corpus_path("two-branch.apt");

  auto dot = run_cli("dump-game " + s + " " + a + " --format dot");
  CHECK(dot.exit_code == 0);
  CHECK(dot.output.find("digraph typing_game") != std::string::npos);

  auto js = run_cli("dump-game " + s + " " + a + " --format json");
  CHECK(js.exit_code == 0);
  auto parsed = nlohmann::json::parse(js.output);
  CHECK(parsed.at("vertices").size() > 0);
  CHECK(parsed.contains("initial"));

  auto again = run_cli("dump-game " + s + " " + a + " --format json");
  CHECK(again.output == js.output);
}

TEST_CASE("explicit initial state") {
  std::string s = corpus_path("list-producer.hors");
  std::string a = corpus_path("list-producer-safety.apt");
  auto q1 = run_cli("check " + s + " " + a + " --state q1 --json");
  auto parsed = nlohmann::json::parse(q1.output);
  CHECK(parsed.at("initial_state") == "q1");
  auto bad = run_cli("check " + s + " " + a + " --state nope");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("limits come from the environment") {
  std::string s = write_temp("lim.hors",
      "terminals: a : 1\nnonterminals: S : o\nstart: S\nrules:\n  S -> a S\n");
  std::string a = write_temp("lim.apt",
      "states: q\ninitial: q\ncolors: q : 0\ndelta:\n  q a -> (1,q)\n");
  // a vertex budget of 1 cannot hold the game
  std::string cmd = "HORSCK_LIMITS=max_game_vertices=1 " + std::string(HORSCK_CLI_PATH) +
                    " check " + s + " " + a + " 2>/dev/null";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 5);
  // a malformed limits string is a usage error
  cmd = "HORSCK_LIMITS=bogus " + std::string(HORSCK_CLI_PATH) + " check " + s + " " + a +
        " 2>/dev/null";
  status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
}

TEST_CASE("productivity check") {
  std::string good = write_temp("prod.hors",
      "terminals: a : 1\nnonterminals: S : o\nstart: S\nrules:\n  S -> a S\n");
  CHECK(run_cli("check-productivity " + good).exit_code == 0);

  std::string bad = write_temp("unprod.hors",
      "terminals: a : 1\nnonterminals: S : o\nstart: S\nrules:\n  S -> S\n");
  CHECK(run_cli("check-productivity " + bad).exit_code == 1);
}
