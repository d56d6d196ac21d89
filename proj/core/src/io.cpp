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
#include "decstruct/io.hpp"

#include <fstream>
#include <optional>
#include <sstream>

namespace decstruct {

DecisionStructure parse_structure(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  bool header = false;
  std::vector<NodeDecl> nodes;
  std::vector<ArcDecl> arcs;
  std::optional<std::pair<NodeId, int>> declared_source;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string keyword;
    if (!(words >> keyword)) continue;
    if (!header) {
      std::string version;
      if (keyword != "decstruct" || !(words >> version)) {
        throw ParseError("expected header 'decstruct v1'", number, 1);
      }
      if (version != "v1") throw ParseError("unsupported version '" + version + "'", number, 1);
      header = true;
      continue;
    }
    std::string extra;
    if (keyword == "node") {
      NodeDecl n;
      if (!(words >> n.id >> n.action) || (words >> extra)) {
        throw ParseError("expected 'node <id> <action>'", number, 1);
      }
      nodes.push_back(n);
    } else if (keyword == "arc") {
      ArcDecl a;
      if (!(words >> a.tail >> a.head >> a.label) || (words >> extra)) {
        throw ParseError("expected 'arc <tail> <head> <label>'", number, 1);
      }
      arcs.push_back(a);
    } else if (keyword == "source") {
      NodeId id;
      if (!(words >> id) || (words >> extra)) throw ParseError("expected 'source <id>'", number, 1);
      declared_source = std::make_pair(id, number);
    } else {
      throw ParseError("unknown keyword '" + keyword + "'", number, 1);
    }
  }
  if (!header) throw ParseError("missing header 'decstruct v1'");
  DecisionStructure z = validate(nodes, arcs);
  if (declared_source && z.id(z.source()) != declared_source->first) {
    throw ParseError("declared source " + std::to_string(declared_source->first) +
                         " differs from the inferred source " + std::to_string(z.id(z.source())),
                     declared_source->second, 1);
  }
  return z;
}

std::string format_structure(const DecisionStructure& z) {
  std::ostringstream os;
  os << "decstruct v1\n";
  for (std::size_t v = 0; v < z.size(); ++v) {
    os << "node " << z.id(static_cast<int>(v)) << ' ' << z.action(static_cast<int>(v)) << '\n';
  }
  for (const Arc& a : z.arcs()) {
    os << "arc " << z.id(a.tail) << ' ' << z.id(a.head) << ' ' << a.label << '\n';
  }
  return os.str();
}

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void clusters(const DecompositionNode& d, const DecisionStructure& z, int depth, int& counter,
              std::ostringstream& os) {
  for (const DecompositionNode& f : d.factors) {
    if (f.kind == DecompositionKind::Leaf) continue;
    std::string indent(2 * depth, ' ');
    os << indent << "subgraph cluster_" << counter++ << " {\n";
    os << indent << "  label=" << quote(std::string(to_string(f.kind)) +
                                        (f.kind == DecompositionKind::Path ? " " + f.label : ""))
       << ";\n";
    os << indent << "  ";
    for (int v : f.members) os << 'n' << z.id(v) << "; ";
    os << '\n';
    clusters(f, z, depth + 1, counter, os);
    os << indent << "}\n";
  }
}

}  // namespace

std::string render_dot(const DecisionStructure& z, const DecompositionNode* decomposition) {
  std::ostringstream os;
  os << "digraph decstruct {\n";
  os << "  node [shape=box];\n";
  for (std::size_t v = 0; v < z.size(); ++v) {
    int i = static_cast<int>(v);
    os << "  n" << z.id(i) << " [label=" << quote(z.action(i));
    if (i == z.source()) os << ", peripheries=2";
    os << "];\n";
  }
  for (const Arc& a : z.arcs()) {
    os << "  n" << z.id(a.tail) << " -> n" << z.id(a.head) << " [label=" << quote(a.label)
       << "];\n";
  }
  if (decomposition) {
    int counter = 0;
    clusters(*decomposition, z, 1, counter, os);
  }
  os << "}\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace decstruct
