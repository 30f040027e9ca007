// Copyright 2026 The rqite Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "json.hpp"
#include "rqite/hamiltonian.hpp"

namespace rqite {

inline constexpr const char* kVersion = "0.1.0";

struct CommandInputs {
  const LocalHamiltonian* hamiltonian = nullptr;
  const SemiClassicalState* state = nullptr;
  const ShallowCircuit* circuit = nullptr;
};

/// Runs one of oracle, partition, estimate, clusters, mc, continue, bench,
/// selftest with snake_case options and returns the result payload. Unknown
/// option keys raise InvalidArgument.
nlohmann::json run_command(const std::string& command, const nlohmann::json& options, const CommandInputs& inputs);

}  // namespace rqite
