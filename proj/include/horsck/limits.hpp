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

#ifndef HORSCK_LIMITS_HPP
#define HORSCK_LIMITS_HPP

#include <cstddef>
#include <string>

namespace horsck {

// Resource guards for game construction, proof search and the naive solver.
// HORSCK_LIMITS overrides fields as a comma-separated key=value list, e.g.
//   HORSCK_LIMITS=fuel=100000,max_game_vertices=500000
struct Limits {
  int fuel = 10000;                      // head-reduction steps per tree node
  size_t max_game_vertices = 200000;
  size_t max_contexts = 200000;          // context sets per search goal
  size_t max_demand_subsets = 65536;     // colored-set choices per argument
  size_t max_refinements = 8192;         // refinement table per kind
  size_t max_naive_strategies = 10000000;

  static Limits defaults() { return Limits{}; }
  // defaults overridden by HORSCK_LIMITS if set
  static Limits from_env();
  // parses a key=value,... description (throws std::invalid_argument)
  static Limits parse(const std::string& description);
};

}  // namespace horsck

#endif  // HORSCK_LIMITS_HPP
