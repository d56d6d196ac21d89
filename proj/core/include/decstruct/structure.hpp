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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "decstruct/error.hpp"

namespace decstruct {

// Return values are plain symbols such as "s", "f", "m", "d", "top", "bot".
using ReturnValue = std::string;

// Stable node identifier as written in structure files.
using NodeId = int;

struct NodeDecl {
  NodeId id;
  std::string action;
};

struct ArcDecl {
  NodeId tail;
  NodeId head;
  ReturnValue label;
};

// Arc between node indices (positions in DecisionStructure).
struct Arc {
  int tail;
  int head;
  ReturnValue label;
};

enum class ValidationErrorKind {
  Empty,
  DuplicateNodeId,
  UnknownNode,
  EmptyLabel,
  ParallelArcs,
  DuplicateArcLabel,
  CycleFound,
  MultipleSources,
  NoSource,
  UnreachableNode,
};

const char* to_string(ValidationErrorKind kind);

class ValidationError : public Error {
 public:
  ValidationError(ValidationErrorKind kind, std::vector<NodeId> nodes,
                  const std::string& detail);

  ValidationErrorKind kind() const { return kind_; }
  // Offending node ids. For CycleFound this is the cycle in order.
  const std::vector<NodeId>& nodes() const { return nodes_; }

 private:
  ValidationErrorKind kind_;
  std::vector<NodeId> nodes_;
};

// A labelled single-source DAG whose out-arcs carry pairwise distinct labels.
// Instances are immutable and can only be produced by validate().
//
// Nodes are addressed by index (0..size()-1, in declaration order); the
// external id of index v is id(v).
class DecisionStructure {
 public:
  std::size_t size() const { return ids_.size(); }
  int source() const { return source_; }

  NodeId id(int v) const { return ids_[v]; }
  const std::string& action(int v) const { return actions_[v]; }
  const std::vector<NodeId>& ids() const { return ids_; }
  const std::vector<std::string>& actions() const { return actions_; }

  std::optional<int> find(NodeId id) const;
  // Index of id; throws Error if absent.
  int index(NodeId id) const;

  const std::vector<Arc>& arcs() const { return arcs_; }
  // Arc indices leaving / entering v, sorted by label.
  const std::vector<int>& out_arcs(int v) const { return out_[v]; }
  const std::vector<int>& in_arcs(int v) const { return in_[v]; }
  std::optional<int> successor(int v, const ReturnValue& label) const;

  // Distinct arc labels, sorted.
  const std::vector<ReturnValue>& labels() const { return labels_; }
  const std::vector<int>& topological_order() const { return topo_; }
  std::vector<int> sinks() const;

  std::vector<NodeDecl> node_decls() const;
  std::vector<ArcDecl> arc_decls() const;

 private:
  friend DecisionStructure validate(const std::vector<NodeDecl>&,
                                    const std::vector<ArcDecl>&);

  DecisionStructure() = default;

  std::vector<NodeId> ids_;
  std::vector<std::string> actions_;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
  std::vector<ReturnValue> labels_;
  std::vector<int> topo_;
  std::map<NodeId, int> index_;
  int source_ = 0;
};

// Checks every structural invariant and throws ValidationError naming the
// first violated one.
DecisionStructure validate(const std::vector<NodeDecl>& nodes,
                           const std::vector<ArcDecl>& arcs);

// Convenience builder: node i gets id i and action actions[i].
DecisionStructure build(const std::vector<std::string>& actions,
                        const std::vector<ArcDecl>& arcs);

// Observed return values. An action missing from the map returns a value that
// matches no arc.
using AbstractState = std::map<std::string, ReturnValue>;

// Index of the node selected in state w.
int select(const DecisionStructure& z, const AbstractState& w);

// Nodes visited by select(), starting at the source.
std::vector<int> selection_path(const DecisionStructure& z,
                                const AbstractState& w);

std::optional<ReturnValue> derived_return(const DecisionStructure& z,
                                          const AbstractState& w);

// Label-preserving bijection between node indices of two structures.
struct Isomorphism {
  std::vector<int> mapping;
};

// Returns the isomorphism of labelled graphs between a and b if one exists.
// Action names are ignored unless match_actions is set.
std::optional<Isomorphism> structurally_equivalent(const DecisionStructure& a,
                                                   const DecisionStructure& b,
                                                   bool match_actions = false);

// Substructure induced by the given node indices. Throws ValidationError if
// the induced graph is not a decision structure.
DecisionStructure induced(const DecisionStructure& z,
                          const std::vector<int>& members);

}  // namespace decstruct
