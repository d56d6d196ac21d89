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
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "decstruct/analysis.hpp"
#include "decstruct/architectures.hpp"
#include "decstruct/io.hpp"
#include "decstruct/modules.hpp"
#include "decstruct/verifier.hpp"

namespace {

using decstruct::DecisionStructure;
using decstruct::NodeSet;
using json = nlohmann::json;

struct Options {
  std::string format = "text";
  std::vector<std::string> aliases;
  bool color = false;
};

bool as_json(const Options& o) { return o.format == "json"; }

std::string paint(const Options& o, const std::string& text, bool good) {
  if (!o.color) return text;
  return (good ? "\x1b[32m" : "\x1b[31m") + text + "\x1b[0m";
}

DecisionStructure load_structure(const std::string& path, const Options& o) {
  DecisionStructure z = decstruct::parse_structure(decstruct::read_file(path));
  if (o.aliases.empty()) return z;
  std::map<std::string, std::string> alias;
  for (const std::string& a : o.aliases) {
    auto eq = a.find('=');
    if (eq == std::string::npos) throw decstruct::Error("alias must look like from=to: " + a);
    alias[a.substr(0, eq)] = a.substr(eq + 1);
  }
  auto arcs = z.arc_decls();
  for (auto& arc : arcs) {
    auto it = alias.find(arc.label);
    if (it != alias.end()) arc.label = it->second;
  }
  return decstruct::validate(z.node_decls(), arcs);
}

std::vector<decstruct::NodeId> ids_of(const DecisionStructure& z, const NodeSet& x) {
  std::vector<decstruct::NodeId> ids;
  for (int v : x) ids.push_back(z.id(v));
  std::sort(ids.begin(), ids.end());
  return ids;
}

// Comma-separated node ids or unique action names.
NodeSet parse_node_list(const DecisionStructure& z, const std::string& text) {
  NodeSet out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    bool numeric = std::all_of(item.begin(), item.end(), [](char c) {
      return std::isdigit(static_cast<unsigned char>(c)) || c == '-';
    });
    if (numeric) {
      out.push_back(z.index(std::stoi(item)));
      continue;
    }
    std::vector<int> hits;
    for (int v = 0; v < static_cast<int>(z.size()); ++v) {
      if (z.action(v) == item) hits.push_back(v);
    }
    if (hits.size() != 1) {
      throw decstruct::Error("action name '" + item + "' does not name exactly one node");
    }
    out.push_back(hits[0]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

int node_arg(const DecisionStructure& z, const std::string& text) {
  NodeSet x = parse_node_list(z, text);
  if (x.size() != 1) throw decstruct::Error("expected a single node, got '" + text + "'");
  return x[0];
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw decstruct::Error("cannot write '" + path + "'");
  out << text;
}

json structure_json(const DecisionStructure& z) {
  json nodes = json::array(), arcs = json::array();
  for (const auto& n : z.node_decls()) nodes.push_back({{"id", n.id}, {"action", n.action}});
  for (const auto& a : z.arc_decls()) {
    arcs.push_back({{"tail", a.tail}, {"head", a.head}, {"label", a.label}});
  }
  return {{"nodes", nodes}, {"arcs", arcs}, {"source", z.id(z.source())}};
}

json decomposition_json(const DecisionStructure& z, const decstruct::DecompositionNode& d) {
  json j = {{"kind", decstruct::to_string(d.kind)}, {"members", ids_of(z, d.members)}};
  if (d.kind == decstruct::DecompositionKind::Path) j["label"] = d.label;
  if (d.quotient) j["cyclomatic"] = decstruct::cyclomatic(*d.quotient);
  json factors = json::array();
  for (const auto& f : d.factors) factors.push_back(decomposition_json(z, f));
  if (!d.factors.empty()) j["factors"] = factors;
  return j;
}

void print_decomposition(const DecisionStructure& z, const decstruct::DecompositionNode& d,
                         int depth, std::ostream& os) {
  os << std::string(2 * depth, ' ');
  if (d.kind == decstruct::DecompositionKind::Leaf) {
    os << "leaf " << z.id(d.members[0]) << ' ' << z.action(d.members[0]) << '\n';
    return;
  }
  os << decstruct::to_string(d.kind);
  if (d.kind == decstruct::DecompositionKind::Path) os << ' ' << d.label;
  os << " cyclomatic=" << decstruct::cyclomatic(*d.quotient) << " {";
  auto ids = ids_of(z, d.members);
  for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? "," : "") << ids[i];
  os << "}\n";
  for (const auto& f : d.factors) print_decomposition(z, f, depth + 1, os);
}

std::string letter_text(const decstruct::WorldModel& w, std::size_t letter) {
  return w.format_letter(letter);
}

json trace_json(const decstruct::WorldModel& w, const decstruct::LassoTrace& t) {
  auto state = [&](std::size_t letter) {
    json s = json::object();
    for (std::size_t i = 0; i < w.variables().size(); ++i) {
      const auto& v = w.variables()[i];
      s[v.name] = v.values[w.value(letter, static_cast<int>(i))];
    }
    return s;
  };
  json prefix = json::array(), cycle = json::array();
  for (auto l : t.prefix) prefix.push_back(state(l));
  for (auto l : t.cycle) cycle.push_back(state(l));
  return {{"prefix", prefix}, {"cycle", cycle}};
}

void print_trace(const decstruct::WorldModel& w, const decstruct::LassoTrace& t, std::ostream& os) {
  std::size_t step = 0;
  for (auto l : t.prefix) os << "  " << step++ << ": " << letter_text(w, l) << '\n';
  os << "  -- cycle --\n";
  for (auto l : t.cycle) os << "  " << step++ << ": " << letter_text(w, l) << '\n';
}

struct LogicInputs {
  std::string world;
  std::string actions;
  bool strict = false;
};

void add_logic_options(CLI::App* cmd, LogicInputs& in) {
  cmd->add_option("--world", in.world, "World model file")->required()->check(CLI::ExistingFile);
  cmd->add_option("--actions", in.actions, "Action specification file")
      ->required()
      ->check(CLI::ExistingFile);
  cmd->add_flag("--strict-returns", in.strict, "Reject overlapping return conditions");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decision structures: modules, complexity, classification and verification"};
  app.require_subcommand(1);
  Options opt;
  if (const char* c = std::getenv("DECSTRUCT_COLOR")) opt.color = std::string(c) == "1";
  app.add_option("--format", opt.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--alias", opt.aliases,
                 "Rename an arc label when loading structures, e.g. --alias 1=s");

  std::string file, out_path, second;
  auto* validate = app.add_subcommand("validate", "Check a structure file");
  validate->add_option("file", file)->required();

  auto* construct = app.add_subcommand("construct", "Build the structure of an architecture");
  construct->add_option("file", file, "Architecture (.arch) file")->required();
  construct->add_option("-o,--output", out_path);

  std::string extract_as = "kbt";
  auto* extract = app.add_subcommand("extract", "Recover an equivalent architecture");
  extract->add_option("file", file)->required();
  extract->add_option("--as", extract_as)->check(CLI::IsMember({"kbt", "dt", "tr"}));

  bool names = false;
  auto* modules = app.add_subcommand("modules", "List modules with at least two nodes");
  modules->add_option("file", file)->required();
  modules->add_flag("--names", names, "Print action names instead of ids");

  bool dot = false;
  auto* decompose = app.add_subcommand("decompose", "Print the module decomposition");
  decompose->add_option("file", file)->required();
  decompose->add_flag("--dot", dot, "Emit DOT with nested clusters");

  auto* complexity = app.add_subcommand("complexity", "Cyclomatic and essential complexity");
  complexity->add_option("file", file)->required();

  bool all_labelings = false;
  auto* classify = app.add_subcommand("classify", "Classify as TR, BT, k-BT, DT");
  classify->add_option("file", file)->required();
  classify->add_flag("--all-labelings", all_labelings,
                     "Also try every s/f relabelling of the arcs for BT membership");

  std::string module_arg, node_text;
  auto* contract = app.add_subcommand("contract", "Contract a module to a single node");
  contract->add_option("file", file)->required();
  contract->add_option("--module", module_arg, "Node ids or action names, comma separated")
      ->required();
  contract->add_option("-o,--output", out_path);

  auto* expand = app.add_subcommand("expand", "Replace a node by a structure");
  expand->add_option("file", file)->required();
  expand->add_option("--node", node_text)->required();
  expand->add_option("--with", second)->required();
  expand->add_option("-o,--output", out_path);

  LogicInputs logic;
  std::string spec_text, spec_file, trace_path;
  std::size_t max_states = 5'000'000;
  std::size_t bound = 0;
  auto* verify = app.add_subcommand("verify", "Check a structure against an LTL specification");
  verify->add_option("file", file)->required();
  add_logic_options(verify, logic);
  auto* spec_group = verify->add_option_group("spec");
  spec_group->add_option("--spec", spec_text, "LTL specification");
  spec_group->add_option("--spec-file", spec_file, "File holding the LTL specification");
  spec_group->require_option(1);
  verify->add_option("--trace", trace_path, "Write the counterexample as JSON");
  verify->add_option("--max-states", max_states);
  verify->add_option("--bound", bound, "Only explore this many steps deep (debugging aid)");

  auto* check_replace = app.add_subcommand("check-replace",
                                           "Sufficient condition for replacing a module");
  check_replace->add_option("file", file)->required();
  check_replace->add_option("--module", module_arg)->required();
  check_replace->add_option("--with", second)->required();
  add_logic_options(check_replace, logic);
  check_replace->add_option("--max-states", max_states);
  check_replace->add_option("-o,--output", out_path, "Write the replaced structure");

  bool with_decomposition = false;
  auto* export_dot = app.add_subcommand("export-dot", "Render as DOT");
  export_dot->add_option("file", file)->required();
  export_dot->add_flag("--decomposition", with_decomposition, "Draw module clusters");

  auto* export_fsm = app.add_subcommand("export-fsm", "Export as a finite state machine");
  export_fsm->add_option("file", file)->required();

  auto* export_obligation = app.add_subcommand("export-obligation",
                                               "Write the verification obligation in Spot syntax");
  export_obligation->add_option("file", file)->required();
  add_logic_options(export_obligation, logic);
  auto* ob_group = export_obligation->add_option_group("spec");
  ob_group->add_option("--spec", spec_text);
  ob_group->add_option("--spec-file", spec_file);
  ob_group->require_option(1);
  export_obligation->add_option("-o,--output", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::ostringstream os;
  int status = 0;
  try {
    auto load_logic = [&]() {
      decstruct::WorldModel world = decstruct::parse_world(decstruct::read_file(logic.world));
      auto specs = decstruct::parse_actions(decstruct::read_file(logic.actions), world,
                                            logic.strict ? decstruct::OverlapPolicy::Strict
                                                         : decstruct::OverlapPolicy::FirstMatch);
      return std::make_pair(std::move(world), std::move(specs));
    };
    auto load_spec = [&]() {
      std::string text = spec_file.empty() ? spec_text : decstruct::read_file(spec_file);
      return decstruct::parse_ltl(text);
    };

    if (*validate) {
      auto z = load_structure(file, opt);
      if (as_json(opt)) {
        os << json{{"valid", true}, {"nodes", z.size()}, {"arcs", z.arcs().size()},
                   {"source", z.id(z.source())}}
                  .dump(2)
           << '\n';
      } else {
        os << "valid: " << z.size() << " nodes, " << z.arcs().size() << " arcs, source "
           << z.id(z.source()) << '\n';
      }
    } else if (*construct) {
      auto z = decstruct::construct(decstruct::parse_architecture(decstruct::read_file(file)));
      std::string text = as_json(opt) ? structure_json(z).dump(2) + "\n"
                                      : decstruct::format_structure(z);
      write_output(out_path, text);
    } else if (*extract) {
      auto z = load_structure(file, opt);
      std::optional<std::string> dsl;
      if (extract_as == "dt") {
        if (auto t = decstruct::extract_dt(z)) dsl = decstruct::to_dsl(*t);
      } else {
        auto c = decstruct::classify(z);
        if (extract_as == "tr" && c.tr) dsl = decstruct::to_dsl(*c.tr);
        if (extract_as == "kbt" && c.kbt) dsl = decstruct::to_dsl(*c.kbt);
      }
      if (as_json(opt)) {
        os << json{{"extracted", dsl.has_value()}, {"as", extract_as},
                   {"architecture", dsl ? json(*dsl) : json(nullptr)}}
                  .dump(2)
           << '\n';
      } else if (dsl) {
        os << *dsl << '\n';
      } else {
        std::cerr << "not equivalent to any " << extract_as << '\n';
      }
      status = dsl ? 0 : 1;
    } else if (*modules) {
      auto z = load_structure(file, opt);
      json list = json::array();
      for (const auto& m : decstruct::find_modules(z)) {
        std::vector<std::string> actions;
        for (int v : m.members) actions.push_back(z.action(v));
        if (as_json(opt)) {
          list.push_back({{"members", ids_of(z, m.members)}, {"actions", actions},
                          {"source", z.id(m.source)}});
          continue;
        }
        if (names) {
          for (std::size_t i = 0; i < actions.size(); ++i) os << (i ? " " : "") << actions[i];
        } else {
          auto ids = ids_of(z, m.members);
          for (std::size_t i = 0; i < ids.size(); ++i) os << (i ? " " : "") << ids[i];
        }
        os << '\n';
      }
      if (as_json(opt)) os << list.dump(2) << '\n';
    } else if (*decompose) {
      auto z = load_structure(file, opt);
      auto d = decstruct::decompose(z);
      if (dot) {
        os << decstruct::render_dot(z, &d);
      } else if (as_json(opt)) {
        os << decomposition_json(z, d).dump(2) << '\n';
      } else {
        print_decomposition(z, d, 0, os);
      }
    } else if (*complexity) {
      auto z = load_structure(file, opt);
      auto r = decstruct::complexity(z);
      if (as_json(opt)) {
        os << json{{"nodes", r.nodes},           {"arcs", r.arcs},
                   {"sinks", r.sinks},           {"labels", r.labels},
                   {"cyclomatic", r.cyclomatic}, {"essential", r.essential},
                   {"witness", ids_of(z, r.witness)}}
                  .dump(2)
           << '\n';
      } else {
        os << "nodes " << r.nodes << "\narcs " << r.arcs << "\nsinks " << r.sinks << "\nlabels "
           << r.labels << "\ncyclomatic " << r.cyclomatic << "\nessential " << r.essential
           << "\nwitness";
        for (auto id : ids_of(z, r.witness)) os << ' ' << id;
        os << '\n';
      }
    } else if (*classify) {
      auto z = load_structure(file, opt);
      auto c = decstruct::classify(z);
      std::optional<decstruct::LabelingSearch> search;
      if (all_labelings) search = decstruct::search_bt_labelings(z);
      if (as_json(opt)) {
        json j = {{"tr", c.is_tr}, {"bt", c.is_bt}, {"kbt", c.is_kbt}, {"k", c.k},
                  {"dt", c.is_dt}};
        if (c.kbt) j["kbt_ast"] = decstruct::to_dsl(*c.kbt);
        if (c.tr) j["tr_ast"] = decstruct::to_dsl(*c.tr);
        if (c.dt) j["dt_ast"] = decstruct::to_dsl(*c.dt);
        if (search) {
          j["labelings_tried"] = search->labelings_tried;
          j["bt_under_some_labeling"] = search->bt_labeling.has_value();
        }
        os << j.dump(2) << '\n';
      } else {
        auto flag = [&](const char* name, bool value) {
          os << name << ' ' << paint(opt, value ? "yes" : "no", value) << '\n';
        };
        flag("tr", c.is_tr);
        flag("bt", c.is_bt);
        os << "kbt " << paint(opt, c.is_kbt ? "yes" : "no", c.is_kbt) << " k=" << c.k << '\n';
        flag("dt", c.is_dt);
        if (c.kbt) os << "kbt-ast " << decstruct::to_dsl(*c.kbt) << '\n';
        if (c.tr) os << "tr-ast " << decstruct::to_dsl(*c.tr) << '\n';
        if (c.dt) os << "dt-ast " << decstruct::to_dsl(*c.dt) << '\n';
        if (search) {
          os << "labelings-tried " << search->labelings_tried << '\n';
          os << "bt-under-some-labeling " << (search->bt_labeling ? "yes" : "no") << '\n';
          if (search->bt_labeling) os << decstruct::format_structure(*search->bt_labeling);
        }
      }
    } else if (*contract) {
      auto z = load_structure(file, opt);
      auto q = decstruct::contract(z, parse_node_list(z, module_arg));
      write_output(out_path, as_json(opt) ? structure_json(q).dump(2) + "\n"
                                          : decstruct::format_structure(q));
    } else if (*expand) {
      auto z = load_structure(file, opt);
      auto q = load_structure(second, opt);
      auto r = decstruct::expand(z, node_arg(z, node_text), q);
      write_output(out_path, as_json(opt) ? structure_json(r).dump(2) + "\n"
                                          : decstruct::format_structure(r));
    } else if (*verify) {
      auto z = load_structure(file, opt);
      auto [world, specs] = load_logic();
      decstruct::CheckOptions check;
      check.max_states = max_states;
      check.bound = bound;
      auto verdict = decstruct::verify(z, world, specs, load_spec(), check);
      if (!trace_path.empty() && verdict.counterexample) {
        write_output(trace_path, trace_json(world, *verdict.counterexample).dump(2) + "\n");
      }
      if (as_json(opt)) {
        json j = {{"holds", verdict.holds}, {"states_explored", verdict.states_explored},
                  {"bounded", verdict.bounded}};
        if (verdict.counterexample) {
          j["counterexample"] = trace_json(world, *verdict.counterexample);
          j["failed_conjunct"] = *verdict.failed_conjunct;
        }
        os << j.dump(2) << '\n';
      } else {
        if (verdict.holds && verdict.bounded) {
          os << paint(opt, "no counterexample within bound", true);
        } else {
          os << (verdict.holds ? paint(opt, "holds", true) : paint(opt, "fails", false));
        }
        os << " (" << verdict.states_explored << " states)\n";
        if (verdict.counterexample) {
          os << "counterexample for conjunct " << *verdict.failed_conjunct << ":\n";
          print_trace(world, *verdict.counterexample, os);
        }
      }
      status = verdict.holds ? 0 : 1;
    } else if (*check_replace) {
      auto z = load_structure(file, opt);
      auto q = load_structure(second, opt);
      auto [world, specs] = load_logic();
      NodeSet h = parse_node_list(z, module_arg);
      decstruct::CheckOptions check;
      check.max_states = max_states;
      auto report = decstruct::check_module_replacement(z, h, q, specs, world, check);
      if (!out_path.empty()) {
        write_output(out_path, decstruct::format_structure(decstruct::replace_module(z, h, q)));
      }
      if (as_json(opt)) {
        json returns = json::array();
        for (const auto& r : report.returns) {
          returns.push_back({{"label", r.label}, {"equivalent", r.equivalent},
                             {"original", world.format(r.original)},
                             {"replacement", world.format(r.replacement)}});
        }
        json j = {{"overall", report.overall},
                  {"sink_module", report.sink},
                  {"return_conditions_match", report.return_conditions_match},
                  {"returns", returns},
                  {"model_entailment", report.model_entailment.holds}};
        if (report.model_entailment.counterexample) {
          j["counterexample"] = trace_json(world, *report.model_entailment.counterexample);
        }
        os << j.dump(2) << '\n';
      } else {
        if (report.sink) os << "sink module: return conditions not compared\n";
        for (const auto& r : report.returns) {
          os << "returns " << r.label << ": " << (r.equivalent ? "equal" : "differ") << "\n  original:    "
             << world.format(r.original) << "\n  replacement: " << world.format(r.replacement)
             << '\n';
        }
        os << "model entailment " << (report.model_entailment.holds ? "holds" : "fails") << '\n';
        if (report.model_entailment.counterexample) {
          print_trace(world, *report.model_entailment.counterexample, os);
        }
        os << "overall " << paint(opt, report.overall ? "pass" : "fail", report.overall) << '\n';
      }
      status = report.overall ? 0 : 1;
    } else if (*export_dot) {
      auto z = load_structure(file, opt);
      if (with_decomposition) {
        auto d = decstruct::decompose(z);
        os << decstruct::render_dot(z, &d);
      } else {
        os << decstruct::render_dot(z);
      }
    } else if (*export_fsm) {
      os << decstruct::export_fsm(load_structure(file, opt));
    } else if (*export_obligation) {
      auto z = load_structure(file, opt);
      auto [world, specs] = load_logic();
      auto premise = decstruct::verification_premise(z, world, specs);
      write_output(out_path, decstruct::export_obligation({{premise, world.resolve(load_spec())}},
                                                          &world));
    }
  } catch (const decstruct::Error& e) {
    std::cout << os.str();
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cout << os.str();
  return status;
}
