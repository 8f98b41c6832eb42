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

#ifndef HORSCK_VALIDATE_HPP
#define HORSCK_VALIDATE_HPP

#include <string>

#include "horsck/game.hpp"
#include "horsck/proofsearch.hpp"

namespace horsck {

// Independent re-checking: every node of the derivation is re-derived from
// its children by the corresponding typing rule. Shares only the data
// definitions with the proof search.
bool validate_derivation(const Derivation& derivation, const Scheme& scheme,
                         const Automaton& automaton, std::string* error = nullptr);

// Full witness check: local rule validation of every derivation, root
// judgements matching the recorded typings and contexts, closure of the
// successor wiring, and an even maximum encoded color on every cycle.
bool validate_witness(const Witness& witness, const Scheme& scheme, const Automaton& automaton,
                      const std::string& q0, std::string* error = nullptr);

}  // namespace horsck

#endif  // HORSCK_VALIDATE_HPP
