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

#include "horsck/limits.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace horsck {

Limits Limits::parse(const std::string& description) {
  Limits limits;
  std::stringstream ss(description);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("HORSCK_LIMITS entry without '=': " + item);
    std::string key = item.substr(0, eq);
    unsigned long long value = std::stoull(item.substr(eq + 1));
    if (key == "fuel")
      limits.fuel = static_cast<int>(value);
    else if (key == "max_game_vertices")
      limits.max_game_vertices = value;
    else if (key == "max_contexts")
      limits.max_contexts = value;
    else if (key == "max_demand_subsets")
      limits.max_demand_subsets = value;
    else if (key == "max_refinements")
      limits.max_refinements = value;
    else if (key == "max_naive_strategies")
      limits.max_naive_strategies = value;
    else
      throw std::invalid_argument("unknown HORSCK_LIMITS key: " + key);
  }
  return limits;
}

Limits Limits::from_env() {
  const char* env = std::getenv("HORSCK_LIMITS");
  if (!env) return defaults();
  return parse(env);
}

}  // namespace horsck
