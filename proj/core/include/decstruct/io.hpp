// Copyright 2026 The decstruct Authors
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

#include "decstruct/modules.hpp"
#include "decstruct/structure.hpp"

namespace decstruct {

// Structure files:
//   decstruct v1
//   node <id> <action>
//   arc <tail> <head> <label>
//   source <id>        (optional; checked against the inferred source)
// Blank lines and '#' comments are ignored.
DecisionStructure parse_structure(const std::string& text);
std::string format_structure(const DecisionStructure& z);

// Deterministic DOT. With a decomposition, every non-leaf decomposition node
// that is not the root becomes a nested cluster.
std::string render_dot(const DecisionStructure& z, const DecompositionNode* decomposition = nullptr);

std::string read_file(const std::string& path);

}  // namespace decstruct
