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
#include "decstruct/analysis.hpp"

#include <sstream>

namespace decstruct {
namespace {

void max_quotient(const DecompositionNode& d, long& best, const NodeSet** witness) {
  if (d.kind == DecompositionKind::Leaf) return;
  long c = cyclomatic(*d.quotient);
  if (c > best) {
    best = c;
    *witness = &d.members;
  }
  for (const DecompositionNode& f : d.factors) max_quotient(f, best, witness);
}

}  // namespace

long cyclomatic(const DecisionStructure& z) {
  return static_cast<long>(z.arcs().size()) + static_cast<long>(z.sinks().size()) -
         static_cast<long>(z.size()) + 1;
}

long essential(const DecompositionNode& d) {
  long best = 1;
  const NodeSet* witness = nullptr;
  max_quotient(d, best, &witness);
  return best;
}

long essential(const DecisionStructure& z) { return essential(decompose(z)); }

ComplexityReport complexity(const DecisionStructure& z) {
  ComplexityReport r;
  r.nodes = z.size();
  r.arcs = z.arcs().size();
  r.sinks = z.sinks().size();
  r.labels = z.labels().size();
  r.cyclomatic = cyclomatic(z);
  DecompositionNode d = decompose(z);
  long best = 1;
  const NodeSet* witness = &d.members;
  max_quotient(d, best, &witness);
  r.essential = best;
  r.witness = *witness;
  return r;
}

Classification classify(const DecisionStructure& z) {
  Classification c;
  c.k = z.labels().size();
  c.kbt = extract_kbt(z);
  c.is_kbt = c.kbt.has_value();
  c.is_bt = c.is_kbt && c.k <= 2;
  c.is_tr = c.is_kbt && c.k <= 1;
  if (c.is_tr) c.tr = TrProgram{leaves(*c.kbt)};
  c.dt = extract_dt(z);
  c.is_dt = c.dt.has_value();
  return c;
}

LabelingSearch search_bt_labelings(const DecisionStructure& z, std::size_t max_arcs) {
  const std::size_t m = z.arcs().size();
  if (m > max_arcs) {
    throw Error("relabelling search is limited to " + std::to_string(max_arcs) + " arcs");
  }
  LabelingSearch result;
  std::vector<NodeDecl> nodes = z.node_decls();
  std::vector<ArcDecl> arcs = z.arc_decls();
  for (unsigned long bits = 0; bits < (1ul << m); ++bits) {
    bool distinct = true;
    for (int v = 0; v < static_cast<int>(z.size()) && distinct; ++v) {
      const auto& out = z.out_arcs(v);
      if (out.size() > 2) distinct = false;
      if (out.size() == 2) distinct = ((bits >> out[0]) & 1ul) != ((bits >> out[1]) & 1ul);
    }
    if (!distinct) continue;
    for (std::size_t a = 0; a < m; ++a) arcs[a].label = (bits >> a & 1ul) ? kFailure : kSuccess;
    ++result.labelings_tried;
    DecisionStructure relabelled = validate(nodes, arcs);
    if (extract_kbt(relabelled)) {
      result.bt_labeling = std::move(relabelled);
      break;
    }
  }
  return result;
}

std::string export_fsm(const DecisionStructure& z) {
  std::ostringstream os;
  os << "fsm v1\n";
  for (int v = 0; v < static_cast<int>(z.size()); ++v) {
    os << "state " << z.id(v) << ' ' << z.action(v) << '\n';
  }
  os << "init " << z.id(z.source()) << '\n';
  for (const Arc& a : z.arcs()) {
    os << "trans " << z.id(a.tail) << ' ' << z.id(a.head) << ' ' << a.label << '\n';
  }
  for (int v = 0; v < static_cast<int>(z.size()); ++v) {
    os << "trans " << z.id(v) << ' ' << z.id(z.source()) << " update\n";
  }
  return os.str();
}

}  // namespace decstruct
