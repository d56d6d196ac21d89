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

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "decstruct/architectures.hpp"
#include "decstruct/modules.hpp"

namespace decstruct {

struct ComplexityReport {
  std::size_t nodes = 0;
  std::size_t arcs = 0;
  std::size_t sinks = 0;
  std::size_t labels = 0;
  long cyclomatic = 0;
  long essential = 0;
  // Members of a decomposition node whose quotient attains the essential
  // complexity.
  NodeSet witness;
};

// a + s - n + 1.
long cyclomatic(const DecisionStructure& z);
// Largest cyclomatic complexity over the quotients of decompose(z); 1 for a
// single node.
long essential(const DecisionStructure& z);
long essential(const DecompositionNode& d);
ComplexityReport complexity(const DecisionStructure& z);

struct Classification {
  bool is_tr = false;
  bool is_bt = false;
  bool is_kbt = false;
  bool is_dt = false;
  // Number of distinct labels.
  std::size_t k = 0;
  std::optional<Kbt> kbt;
  std::optional<TrProgram> tr;
  std::optional<Dt> dt;
};

Classification classify(const DecisionStructure& z);

struct LabelingSearch {
  std::size_t labelings_tried = 0;
  // First s/f relabelling found that makes the structure a BT.
  std::optional<DecisionStructure> bt_labeling;
};

// Tries every assignment of s/f to the arcs of z that keeps out-labels
// distinct per node. Throws Error if z has more than max_arcs arcs.
LabelingSearch search_bt_labelings(const DecisionStructure& z,
                                   std::size_t max_arcs = 24);

// States, initial state, labelled transitions and an update transition from
// every state back to the initial one.
std::string export_fsm(const DecisionStructure& z);

}  // namespace decstruct
