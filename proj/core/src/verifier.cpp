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
#include "decstruct/verifier.hpp"

#include <algorithm>
#include <sstream>

namespace decstruct {

Ltl verification_premise(const DecisionStructure& z, const WorldModel& world,
                         const SpecTable& specs) {
  return ltl::conj({world.init(), ltl::always(world.rules_conjunction()),
                    ltl::always(build_psi(z, specs, world))});
}

Verdict verify(const DecisionStructure& z, const WorldModel& world, const SpecTable& specs,
               const Ltl& spec, const CheckOptions& options) {
  return entails(verification_premise(z, world, specs), world.resolve(spec), world, options);
}

namespace {

ReplacementReport compare(const std::vector<ReturnValue>& labels, const ActionSpec& alpha,
                          const ActionSpec& beta, const WorldModel& world,
                          const CheckOptions& options) {
  ReplacementReport report;
  report.original = alpha;
  report.replacement = beta;
  report.sink = labels.empty();
  for (const ReturnValue& r : labels) {
    StateSet a = returns_in(alpha, r, world);
    StateSet b = returns_in(beta, r, world);
    ReturnComparison cmp{r, a == b, world.to_formula(a), world.to_formula(b)};
    report.return_conditions_match = report.return_conditions_match && cmp.equivalent;
    report.returns.push_back(std::move(cmp));
  }
  report.model_entailment =
      entails(ltl::conj(ltl::always(world.rules_conjunction()), beta.model), alpha.model, world,
              options);
  report.overall = report.return_conditions_match && report.model_entailment.holds;
  return report;
}

std::vector<ReturnValue> out_labels(const DecisionStructure& z, int v) {
  std::vector<ReturnValue> labels;
  for (int a : z.out_arcs(v)) labels.push_back(z.arcs()[a].label);
  return labels;
}

}  // namespace

ReplacementReport check_action_replacement(const DecisionStructure& z, int v,
                                           const ActionSpec& alpha, const ActionSpec& beta,
                                           const WorldModel& world,
                                           const CheckOptions& options) {
  if (v < 0 || v >= static_cast<int>(z.size())) throw Error("node index out of range");
  return compare(out_labels(z, v), alpha, beta, world, options);
}

ReplacementReport check_module_replacement(const DecisionStructure& z, const NodeSet& h,
                                           const DecisionStructure& q, const SpecTable& specs,
                                           const WorldModel& world,
                                           const CheckOptions& options) {
  Module m = make_module(z, h);
  std::vector<ReturnValue> labels;
  for (const auto& entry : m.external_successors) labels.push_back(entry.first);
  DecisionStructure inner = induced(z, m.members);
  ActionSpec alpha = derived_spec(inner, specs, world, contracted_action(z, m.members), labels);
  ActionSpec beta = derived_spec(q, specs, world, "replacement", labels);
  return compare(labels, alpha, beta, world, options);
}

DecisionStructure replace_module(const DecisionStructure& z, const NodeSet& h,
                                 const DecisionStructure& q) {
  Module m = make_module(z, h);
  DecisionStructure contracted = contract(z, m.members);
  NodeId id = z.id(m.members.front());
  for (int v : m.members) id = std::min(id, z.id(v));
  return expand(contracted, contracted.index(id), q);
}

namespace {

std::string spot(const Ltl& f, const WorldModel* world) {
  switch (f->kind) {
    case LtlKind::True: return "true";
    case LtlKind::False: return "false";
    case LtlKind::Atom: {
      if (world) {
        auto [var, value] = world->resolve_atom(f->var, f->value);
        const Variable& v = world->variables()[var];
        if (v.boolean) return value == 1 ? "\"" + v.name + "\"" : "!\"" + v.name + "\"";
        return "\"" + v.name + "=" + v.values[value] + "\"";
      }
      return "\"" + (f->var.empty() ? f->value : f->var + "=" + f->value) + "\"";
    }
    case LtlKind::Not: return "!(" + spot(f->args[0], world) + ")";
    case LtlKind::And: return "(" + spot(f->args[0], world) + " && " + spot(f->args[1], world) + ")";
    case LtlKind::Or: return "(" + spot(f->args[0], world) + " || " + spot(f->args[1], world) + ")";
    case LtlKind::Implies:
      return "(" + spot(f->args[0], world) + " -> " + spot(f->args[1], world) + ")";
    case LtlKind::Next: return "X(" + spot(f->args[0], world) + ")";
    case LtlKind::Until: return "(" + spot(f->args[0], world) + " U " + spot(f->args[1], world) + ")";
    case LtlKind::Release:
      return "(" + spot(f->args[0], world) + " R " + spot(f->args[1], world) + ")";
    case LtlKind::Eventually: return "F(" + spot(f->args[0], world) + ")";
    case LtlKind::Always: return "G(" + spot(f->args[0], world) + ")";
  }
  return "";
}

}  // namespace

std::string export_obligation(const std::vector<std::pair<Ltl, Ltl>>& obligations,
                              const WorldModel* world) {
  std::ostringstream os;
  for (const auto& [premise, conclusion] : obligations) {
    Ltl full = premise;
    if (world) {
      auto parts = world->disjointedness();
      if (!parts.empty()) full = ltl::conj(ltl::always(ltl::conj(parts)), premise);
    }
    os << "premise: " << spot(full, world) << '\n';
    os << "conclusion: " << spot(conclusion, world) << '\n';
  }
  return os.str();
}

}  // namespace decstruct
