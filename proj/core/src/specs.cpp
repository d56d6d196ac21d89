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
#include "decstruct/specs.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>
#include <unordered_map>

namespace decstruct {

ActionSpec condition_action(std::string name, const Ltl& cond) {
  return ActionSpec{std::move(name), {{"s", cond}, {"f", ltl::negate(cond)}}, ltl::truth()};
}

StateSet returns_in(const ActionSpec& spec, const ReturnValue& r, const WorldModel& world) {
  StateSet taken(world.letter_count());
  for (const auto& [value, cond] : spec.returns) {
    StateSet here = world.states(cond) & ~taken;
    if (value == r) return here;
    taken |= here;
  }
  return StateSet(world.letter_count());
}

std::optional<ReturnValue> return_value(const ActionSpec& spec, const WorldModel& world,
                                        std::size_t letter) {
  for (const auto& [value, cond] : spec.returns) {
    if (world.holds(cond, letter)) return value;
  }
  return std::nullopt;
}

std::vector<std::pair<ReturnValue, ReturnValue>> overlapping_returns(const ActionSpec& spec,
                                                                     const WorldModel& world) {
  std::vector<std::pair<ReturnValue, ReturnValue>> out;
  std::vector<StateSet> sets;
  for (const auto& entry : spec.returns) sets.push_back(world.states(entry.second));
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (!(sets[i] & sets[j]).empty()) {
        out.emplace_back(spec.returns[i].first, spec.returns[j].first);
      }
    }
  }
  return out;
}

AbstractState abstract_state(const SpecTable& specs, const WorldModel& world,
                             std::size_t letter) {
  AbstractState w;
  for (const auto& [name, spec] : specs) {
    if (auto r = return_value(spec, world, letter)) w[name] = *r;
  }
  return w;
}

namespace {

class ActionReader {
 public:
  ActionReader(const std::string& text, const WorldModel& world) : text_(text), world_(world) {
    // Drop comments, keeping line structure.
    bool comment = false;
    for (char& c : text_) {
      if (c == '#') comment = true;
      if (c == '\n') comment = false;
      if (comment) c = ' ';
    }
  }

  SpecTable read(OverlapPolicy policy) {
    SpecTable table;
    for (;;) {
      skip();
      if (pos_ >= text_.size()) break;
      std::string keyword = word();
      ActionSpec spec;
      if (keyword == "action") {
        spec = action();
      } else if (keyword == "condition") {
        spec = condition();
      } else {
        fail("expected 'action' or 'condition', found '" + keyword + "'");
      }
      if (policy == OverlapPolicy::Strict) {
        auto overlaps = overlapping_returns(spec, world_);
        if (!overlaps.empty()) {
          fail("return conditions '" + overlaps[0].first + "' and '" + overlaps[0].second +
               "' of action '" + spec.name + "' overlap");
        }
      }
      std::string name = spec.name;
      if (!table.emplace(name, std::move(spec)).second) {
        fail("action '" + name + "' declared twice");
      }
    }
    return table;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    int line = 1 + static_cast<int>(std::count(text_.begin(), text_.begin() + pos_, '\n'));
    throw ParseError(what, line, 1);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  std::string word() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '{' && text_[pos_] != ':' && text_[pos_] != ';' &&
           text_[pos_] != '}') {
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return text_.substr(start, pos_ - start);
  }

  void expect(char c) {
    skip();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  Ltl formula(const std::string& source) {
    try {
      return world_.resolve(parse_ltl(source));
    } catch (const Error& e) {
      fail(e.what());
    }
  }

  Ltl state_formula(const std::string& source) {
    Ltl f = formula(source);
    if (!is_propositional(f)) fail("return condition must not use temporal operators");
    return f;
  }

  ActionSpec action() {
    ActionSpec spec;
    spec.name = word();
    expect('{');
    std::size_t close = text_.find('}', pos_);
    if (close == std::string::npos) fail("missing '}'");
    std::string body = text_.substr(pos_, close - pos_);
    std::istringstream parts(body);
    std::string part;
    bool has_model = false;
    while (std::getline(parts, part, ';')) {
      auto colon = part.find(':');
      std::istringstream head(part.substr(0, colon == std::string::npos ? part.size() : colon));
      std::string key, value, extra;
      if (!(head >> key)) continue;
      if (colon == std::string::npos) fail("expected ':' after '" + key + "'");
      std::string rhs = part.substr(colon + 1);
      if (key == "model") {
        if (has_model) fail("action '" + spec.name + "' has two models");
        spec.model = formula(rhs);
        has_model = true;
      } else if (key == "returns") {
        if (!(head >> value) || (head >> extra)) fail("expected 'returns <value>: <formula>'");
        for (const auto& entry : spec.returns) {
          if (entry.first == value) fail("return value '" + value + "' given twice");
        }
        spec.returns.emplace_back(value, state_formula(rhs));
      } else {
        fail("unknown action field '" + key + "'");
      }
    }
    pos_ = close + 1;
    return spec;
  }

  ActionSpec condition() {
    std::string name = word();
    expect(':');
    std::size_t end = text_.find_first_of(";\n", pos_);
    if (end == std::string::npos) end = text_.size();
    Ltl cond = state_formula(text_.substr(pos_, end - pos_));
    pos_ = end;
    if (pos_ < text_.size() && text_[pos_] == ';') ++pos_;
    return condition_action(name, cond);
  }

  std::string text_;
  const WorldModel& world_;
  std::size_t pos_ = 0;
};

Prop make(PropKind kind, std::vector<Prop> args = {}, std::string name = {},
          std::string value = {}) {
  return std::make_shared<const PropNode>(
      PropNode{kind, std::move(name), std::move(value), std::move(args)});
}

const ActionSpec& spec_for(const SpecTable& specs, const std::string& action) {
  auto it = specs.find(action);
  if (it == specs.end()) throw MissingSpecError("no specification for action '" + action + "'");
  return it->second;
}

}  // namespace

SpecTable parse_actions(const std::string& text, const WorldModel& world,
                        OverlapPolicy policy) {
  return ActionReader(text, world).read(policy);
}

std::string format_actions(const SpecTable& specs, const WorldModel& world) {
  std::ostringstream os;
  for (const auto& [name, spec] : specs) {
    os << "action " << name << " {\n  model: " << world.format(spec.model) << ";\n";
    for (const auto& [value, cond] : spec.returns) {
      os << "  returns " << value << ": " << world.format(cond) << ";\n";
    }
    os << "}\n";
  }
  return os.str();
}

namespace prop {

Prop truth() {
  static const Prop t = make(PropKind::True);
  return t;
}

Prop falsity() {
  static const Prop f = make(PropKind::False);
  return f;
}

Prop returns(std::string action, ReturnValue value) {
  return make(PropKind::ReturnAtom, {}, std::move(action), std::move(value));
}

Prop world_atom(std::string var, std::string value) {
  return make(PropKind::WorldAtom, {}, std::move(var), std::move(value));
}

Prop negate(Prop a) {
  if (a->kind == PropKind::True) return falsity();
  if (a->kind == PropKind::False) return truth();
  return make(PropKind::Not, {std::move(a)});
}

Prop conj(std::vector<Prop> parts) {
  std::vector<Prop> kept;
  for (Prop& p : parts) {
    if (p->kind == PropKind::False) return falsity();
    if (p->kind != PropKind::True) kept.push_back(std::move(p));
  }
  if (kept.empty()) return truth();
  if (kept.size() == 1) return kept.front();
  return make(PropKind::And, std::move(kept));
}

Prop disj(std::vector<Prop> parts) {
  std::vector<Prop> kept;
  for (Prop& p : parts) {
    if (p->kind == PropKind::True) return truth();
    if (p->kind != PropKind::False) kept.push_back(std::move(p));
  }
  if (kept.empty()) return falsity();
  if (kept.size() == 1) return kept.front();
  return make(PropKind::Or, std::move(kept));
}

}  // namespace prop

namespace {

void print(const Prop& p, std::string& out, bool nested) {
  switch (p->kind) {
    case PropKind::True: out += "true"; return;
    case PropKind::False: out += "false"; return;
    case PropKind::WorldAtom: out += p->name + "=" + p->value; return;
    case PropKind::ReturnAtom: out += p->name + ":" + p->value; return;
    case PropKind::Not:
      out += "!";
      print(p->args[0], out, true);
      return;
    case PropKind::And:
    case PropKind::Or: {
      if (nested) out += "(";
      for (std::size_t i = 0; i < p->args.size(); ++i) {
        if (i) out += p->kind == PropKind::And ? " & " : " | ";
        print(p->args[i], out, true);
      }
      if (nested) out += ")";
      return;
    }
  }
}

template <class Value, class Leaf, class Combine>
Value fold(const Prop& root, const Leaf& leaf, const Combine& combine) {
  std::unordered_map<const PropNode*, Value> memo;
  auto rec = [&](auto& self, const Prop& p) -> Value {
    auto it = memo.find(p.get());
    if (it != memo.end()) return it->second;
    Value v;
    if (p->args.empty()) {
      v = leaf(*p);
    } else {
      std::vector<Value> args;
      for (const Prop& a : p->args) args.push_back(self(self, a));
      v = combine(p->kind, args);
    }
    memo.emplace(p.get(), v);
    return v;
  };
  return rec(rec, root);
}

}  // namespace

std::string to_string(const Prop& p) {
  std::string out;
  print(p, out, false);
  return out;
}

bool evaluate(const Prop& p, const AbstractState& w) {
  return fold<bool>(
      p,
      [&](const PropNode& leaf) {
        switch (leaf.kind) {
          case PropKind::True: return true;
          case PropKind::False: return false;
          case PropKind::ReturnAtom: {
            auto it = w.find(leaf.name);
            return it != w.end() && it->second == leaf.value;
          }
          default: throw Error("world atom in an abstract-state formula");
        }
      },
      [](PropKind kind, const std::vector<bool>& args) {
        if (kind == PropKind::Not) return !args[0];
        if (kind == PropKind::And) return std::all_of(args.begin(), args.end(), [](bool b) { return b; });
        return std::any_of(args.begin(), args.end(), [](bool b) { return b; });
      });
}

StateSet ground(const Prop& p, const SpecTable& specs, const WorldModel& world) {
  const std::size_t n = world.letter_count();
  return fold<StateSet>(
      p,
      [&](const PropNode& leaf) {
        switch (leaf.kind) {
          case PropKind::True: return StateSet(n, true);
          case PropKind::False: return StateSet(n);
          case PropKind::ReturnAtom: return returns_in(spec_for(specs, leaf.name), leaf.value, world);
          case PropKind::WorldAtom: return world.states(ltl::atom(leaf.name, leaf.value));
          default: throw Error("malformed formula");
        }
      },
      [&](PropKind kind, const std::vector<StateSet>& args) {
        if (kind == PropKind::Not) return ~args[0];
        StateSet acc(n, kind == PropKind::And);
        for (const StateSet& a : args) {
          if (kind == PropKind::And) {
            acc &= a;
          } else {
            acc |= a;
          }
        }
        return acc;
      });
}

std::vector<Prop> selection_conditions(const DecisionStructure& z) {
  std::vector<Prop> reach(z.size()), select(z.size());
  for (int v : z.topological_order()) {
    if (v == z.source()) {
      reach[v] = prop::truth();
    } else {
      std::vector<Prop> ways;
      for (int a : z.in_arcs(v)) {
        const Arc& arc = z.arcs()[a];
        ways.push_back(prop::conj({reach[arc.tail], prop::returns(z.action(arc.tail), arc.label)}));
      }
      reach[v] = prop::disj(std::move(ways));
    }
    std::vector<Prop> stop{reach[v]};
    for (int a : z.out_arcs(v)) {
      stop.push_back(prop::negate(prop::returns(z.action(v), z.arcs()[a].label)));
    }
    select[v] = prop::conj(std::move(stop));
  }
  return select;
}

Prop selection_condition(const DecisionStructure& z, int v) {
  return selection_conditions(z).at(v);
}

Prop return_condition(const DecisionStructure& z, const ReturnValue& r) {
  auto select = selection_conditions(z);
  std::vector<Prop> terms;
  for (std::size_t v = 0; v < z.size(); ++v) {
    terms.push_back(prop::conj({select[v], prop::returns(z.action(v), r)}));
  }
  return prop::disj(std::move(terms));
}

std::vector<StateSet> selection_sets(const DecisionStructure& z, const SpecTable& specs,
                                     const WorldModel& world) {
  const std::size_t n = world.letter_count();
  std::vector<StateSet> reach(z.size()), select(z.size());
  for (int v : z.topological_order()) {
    const ActionSpec& spec = spec_for(specs, z.action(v));
    if (v == z.source()) {
      reach[v] = StateSet(n, true);
    } else {
      reach[v] = StateSet(n);
      for (int a : z.in_arcs(v)) {
        const Arc& arc = z.arcs()[a];
        reach[v] |= reach[arc.tail] & returns_in(spec_for(specs, z.action(arc.tail)), arc.label, world);
      }
    }
    select[v] = reach[v];
    for (int a : z.out_arcs(v)) select[v] &= ~returns_in(spec, z.arcs()[a].label, world);
  }
  return select;
}

StateSet return_set(const DecisionStructure& z, const ReturnValue& r, const SpecTable& specs,
                    const WorldModel& world) {
  auto select = selection_sets(z, specs, world);
  StateSet out(world.letter_count());
  for (std::size_t v = 0; v < z.size(); ++v) {
    out |= select[v] & returns_in(spec_for(specs, z.action(static_cast<int>(v))), r, world);
  }
  return out;
}

Ltl build_psi(const DecisionStructure& z, const SpecTable& specs, const WorldModel& world) {
  auto select = selection_sets(z, specs, world);
  std::vector<std::string> order;
  std::map<std::string, StateSet> by_action;
  for (std::size_t v = 0; v < z.size(); ++v) {
    const std::string& a = z.action(static_cast<int>(v));
    auto [it, fresh] = by_action.emplace(a, StateSet(world.letter_count()));
    if (fresh) order.push_back(a);
    it->second |= select[v];
  }
  std::vector<Ltl> terms;
  for (const std::string& a : order) {
    const StateSet& where = by_action.at(a);
    if (where.empty()) continue;
    const Ltl& model = spec_for(specs, a).model;
    if (where.full()) {
      terms.push_back(model);
    } else if (model->kind == LtlKind::True) {
      terms.push_back(world.to_formula(where));
    } else {
      terms.push_back(ltl::conj(world.to_formula(where), model));
    }
  }
  return ltl::disj(terms);
}

ActionSpec derived_spec(const DecisionStructure& z, const SpecTable& specs,
                        const WorldModel& world, std::string name,
                        const std::vector<ReturnValue>& labels) {
  ActionSpec spec;
  spec.name = std::move(name);
  for (const ReturnValue& r : labels) {
    StateSet where = return_set(z, r, specs, world);
    if (!where.empty()) spec.returns.emplace_back(r, world.to_formula(where));
  }
  spec.model = build_psi(z, specs, world);
  return spec;
}

}  // namespace decstruct
