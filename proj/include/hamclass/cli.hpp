// Copyright 2026 The hamclass authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef HAMCLASS_CLI_HPP
#define HAMCLASS_CLI_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "hamclass/gadgets.hpp"

namespace hamclass {

// Exit codes: 0 ok, 2 parse, 3 arity, 4 unsupported construction,
// 5 bound violation, 6 numeric failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitParse = 2;
inline constexpr int kExitArity = 3;
inline constexpr int kExitUnsupported = 4;
inline constexpr int kExitBound = 5;
inline constexpr int kExitNumeric = 6;

struct CliResult {
  int exit_code = kExitOk;
  std::string output;  // written to stdout
  std::string error;   // written to stderr
};

CliResult run_cli(const std::vector<std::string>& args);

int exit_code_for(Errc code);

// Plan sidecar helpers (also used to hand-write pin / mediator plans).
nlohmann::json plan_sidecar(const GadgetPlan& plan, nlohmann::json blueprint);
nlohmann::json pin_blueprint(const HamiltonianInstance& inst, const HamiltonianInstance& heavy,
                             double delta);
nlohmann::json mediator_blueprint(const HamiltonianInstance& h_else, const MediatorSpec& spec);

}  // namespace hamclass

#endif  // HAMCLASS_CLI_HPP
