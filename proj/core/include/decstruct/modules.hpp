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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "decstruct/structure.hpp"

namespace decstruct {

// Sorted node indices.
using NodeSet = std::vector<int>;

enum class ModuleErrorKind { NotAPartition, NotAModule, SizeLimitExceeded };

class ModuleError : public Error {
 public:
  ModuleError(ModuleErrorKind kind, NodeSet nodes, const std::string& what)
      : Error(what), kind_(kind), nodes_(std::move(nodes)) {}

  ModuleErrorKind kind() const { return kind_; }
  const NodeSet& nodes() const { return nodes_; }

 private:
  ModuleErrorKind kind_;
  NodeSet nodes_;
};

struct Module {
  NodeSet members;
  int source = 0;
  // Label to the unique node outside the module reached by that label.
  std::map<ReturnValue, int> external_successors;

  friend bool operator==(const Module&, const Module&) = default;
};

// Direct check of the module definition.
bool is_module(const DecisionStructure& z, const NodeSet& x);

// Throws ModuleError(NotAModule) unless x is a module.
Module make_module(const DecisionStructure& z, const NodeSet& x);

// All modules with at least two members, N(Z) included, sorted by source
// index and then by member list.
std::vector<Module> find_modules(const DecisionStructure& z);

// Member sets of find_modules(z) without N(Z).
std::vector<NodeSet> nontrivial_modules(const DecisionStructure& z);

// Synthesised action name of a contracted node, e.g. "mod(3,4,7)".
std::string contracted_action(const DecisionStructure& z, const NodeSet& x);

// Quotient by a modular partition. Quotient node i stands for partition[i];
// it keeps the id and action of a singleton block, and otherwise takes the
// smallest member id and contracted_action().
DecisionStructure quotient(const DecisionStructure& z,
                           const std::vector<NodeSet>& partition);

// Quotient by {q} plus singletons, in the original node order with q placed
// at the position of its source.
DecisionStructure contract(const DecisionStructure& z, const NodeSet& q);

struct Expansion {
  DecisionStructure structure;
  // Index in structure of each node of the inserted copy, by index in q.
  std::vector<int> inserted;
};

// Replaces node v by a copy of q. Ids of q that clash with ids of z are
// renumbered above the largest id in z.
Expansion expand_at(const DecisionStructure& z, int v, const DecisionStructure& q);
DecisionStructure expand(const DecisionStructure& z, int v, const DecisionStructure& q);

enum class DecompositionKind { Leaf, Prime, Path };

const char* to_string(DecompositionKind kind);

struct DecompositionNode {
  DecompositionKind kind = DecompositionKind::Leaf;
  // Arc label of a Path quotient.
  ReturnValue label;
  // Node indices of the decomposed structure covered by this node.
  NodeSet members;
  // Absent for leaves. Quotient node i corresponds to factors[i]; quotient
  // nodes are listed in topological order.
  std::optional<DecisionStructure> quotient;
  std::vector<DecompositionNode> factors;
};

DecompositionNode decompose(const DecisionStructure& z);

// Every set partition of N(Z) into modules. Throws SizeLimitExceeded when z
// has more than max_nodes nodes.
std::vector<std::vector<NodeSet>> enumerate_modular_partitions(
    const DecisionStructure& z, std::size_t max_nodes = 8);

}  // namespace decstruct
