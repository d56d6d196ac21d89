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
#include <utility>
#include <vector>

#include "decstruct/checker.hpp"
#include "decstruct/modules.hpp"
#include "decstruct/specs.hpp"

namespace decstruct {

// init & G(rules) & G(psi(z)).
Ltl verification_premise(const DecisionStructure& z, const WorldModel& world,
                         const SpecTable& specs);

Verdict verify(const DecisionStructure& z, const WorldModel& world, const SpecTable& specs,
               const Ltl& spec, const CheckOptions& options = {});

struct ReturnComparison {
  ReturnValue label;
  bool equivalent = false;
  // States where the original returns label, and the replacement.
  Ltl original;
  Ltl replacement;
};

struct ReplacementReport {
  std::vector<ReturnComparison> returns;
  bool return_conditions_match = true;
  // True when nothing leaves the replaced node or module, so return
  // conditions are not compared.
  bool sink = false;
  Verdict model_entailment;
  bool overall = false;
  // Specifications compared (derived ones for module replacement).
  ActionSpec original;
  ActionSpec replacement;
};

// Sufficient condition for relabelling node v from action alpha to beta:
// equal return conditions for the labels leaving v, and
// G(rules) & model(beta) entails model(alpha).
ReplacementReport check_action_replacement(const DecisionStructure& z, int v,
                                           const ActionSpec& alpha, const ActionSpec& beta,
                                           const WorldModel& world,
                                           const CheckOptions& options = {});

// The same condition applied to the derived specifications of z[h] and q.
ReplacementReport check_module_replacement(const DecisionStructure& z, const NodeSet& h,
                                           const DecisionStructure& q, const SpecTable& specs,
                                           const WorldModel& world,
                                           const CheckOptions& options = {});

// (z / h) with the contracted node expanded by q.
DecisionStructure replace_module(const DecisionStructure& z, const NodeSet& h,
                                 const DecisionStructure& q);

// Two lines per obligation, "premise: <f>" and "conclusion: <g>", in Spot's
// LTL syntax with atoms written as quoted Var=value names. The obligation
// holds iff f -> g is valid. World disjointedness is added to each premise
// when a world is given.
std::string export_obligation(const std::vector<std::pair<Ltl, Ltl>>& obligations,
                              const WorldModel* world = nullptr);

}  // namespace decstruct
