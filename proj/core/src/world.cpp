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
#include "decstruct/world.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace decstruct {

StateSet::StateSet(std::size_t size, bool full) : size_(size), bits_((size + 63) / 64, 0) {
  if (full) {
    for (std::size_t i = 0; i < size; ++i) insert(i);
  }
}

std::size_t StateSet::count() const {
  std::size_t n = 0;
  for (std::uint64_t w : bits_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::vector<std::size_t> StateSet::elements() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

StateSet StateSet::operator&(const StateSet& o) const {
  StateSet r = *this;
  return r &= o;
}

StateSet StateSet::operator|(const StateSet& o) const {
  StateSet r = *this;
  return r |= o;
}

StateSet StateSet::operator~() const {
  StateSet r(size_);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = ~bits_[i];
  if (size_ % 64) r.bits_.back() &= (std::uint64_t{1} << (size_ % 64)) - 1;
  return r;
}

StateSet& StateSet::operator&=(const StateSet& o) {
  if (o.size_ != size_) throw Error("state sets over different worlds");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= o.bits_[i];
  return *this;
}

StateSet& StateSet::operator|=(const StateSet& o) {
  if (o.size_ != size_) throw Error("state sets over different worlds");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= o.bits_[i];
  return *this;
}

void WorldModel::add_variable(std::string name, std::vector<std::string> values) {
  if (values.empty()) throw Error("variable '" + name + "' has an empty domain");
  for (const Variable& v : vars_) {
    if (v.name == name) throw Error("variable '" + name + "' declared twice");
  }
  std::vector<std::string> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw Error("variable '" + name + "' repeats a value");
  }
  if (values.size() > 255) throw Error("variable '" + name + "' has too many values");
  vars_.push_back({std::move(name), std::move(values), false});
  rebuild();
}

void WorldModel::add_boolean(std::string name) {
  add_variable(std::move(name), {"false", "true"});
  vars_.back().boolean = true;
}

void WorldModel::add_rule(std::string name, const Ltl& formula) {
  rules_.emplace_back(std::move(name), resolve(formula));
}

void WorldModel::set_init(const Ltl& formula) { init_ = resolve(formula); }

void WorldModel::rebuild() {
  const std::size_t n = vars_.size();
  stride_.assign(n, 1);
  letters_ = 1;
  for (std::size_t i = n; i-- > 0;) {
    stride_[i] = letters_;
    letters_ *= vars_[i].values.size();
    if (letters_ > (1u << 20)) throw Error("world has too many states");
  }
  table_.assign(letters_ * n, 0);
  for (std::size_t letter = 0; letter < letters_; ++letter) {
    for (std::size_t i = 0; i < n; ++i) {
      table_[letter * n + i] =
          static_cast<std::uint8_t>(letter / stride_[i] % vars_[i].values.size());
    }
  }
}

std::pair<int, int> WorldModel::resolve_atom(const std::string& var,
                                             const std::string& value) const {
  auto index_of = [](const std::vector<std::string>& values, const std::string& v) {
    auto it = std::find(values.begin(), values.end(), v);
    return it == values.end() ? -1 : static_cast<int>(it - values.begin());
  };
  if (!var.empty()) {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i].name != var) continue;
      int x = index_of(vars_[i].values, value);
      if (x < 0) throw UnknownAtomError("variable '" + var + "' has no value '" + value + "'");
      return {static_cast<int>(i), x};
    }
    throw UnknownAtomError("unknown variable '" + var + "'");
  }
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].boolean && vars_[i].name == value) return {static_cast<int>(i), 1};
  }
  std::optional<std::pair<int, int>> found;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i].boolean) continue;
    int x = index_of(vars_[i].values, value);
    if (x < 0) continue;
    if (found) throw UnknownAtomError("atom '" + value + "' is ambiguous; write Var=" + value);
    found = std::make_pair(static_cast<int>(i), x);
  }
  if (!found) throw UnknownAtomError("unknown atom '" + value + "'");
  return *found;
}

Ltl WorldModel::resolve(const Ltl& f) const {
  if (f->kind == LtlKind::Atom) {
    auto [var, value] = resolve_atom(f->var, f->value);
    return ltl::atom(vars_[var].name, vars_[var].values[value]);
  }
  if (f->args.empty()) return f;
  std::vector<Ltl> args;
  for (const Ltl& a : f->args) args.push_back(resolve(a));
  return std::make_shared<const LtlNode>(LtlNode{f->kind, {}, {}, std::move(args)});
}

bool WorldModel::holds(const Ltl& f, std::size_t letter) const {
  switch (f->kind) {
    case LtlKind::True: return true;
    case LtlKind::False: return false;
    case LtlKind::Atom: {
      auto [var, value] = resolve_atom(f->var, f->value);
      return this->value(letter, var) == value;
    }
    case LtlKind::Not: return !holds(f->args[0], letter);
    case LtlKind::And: return holds(f->args[0], letter) && holds(f->args[1], letter);
    case LtlKind::Or: return holds(f->args[0], letter) || holds(f->args[1], letter);
    case LtlKind::Implies: return !holds(f->args[0], letter) || holds(f->args[1], letter);
    default: throw Error("temporal operator in a state formula: " + to_string(f));
  }
}

StateSet WorldModel::states(const Ltl& f) const {
  switch (f->kind) {
    case LtlKind::True: return StateSet(letters_, true);
    case LtlKind::False: return StateSet(letters_);
    case LtlKind::Atom: {
      auto [var, value] = resolve_atom(f->var, f->value);
      StateSet s(letters_);
      for (std::size_t l = 0; l < letters_; ++l) {
        if (this->value(l, var) == value) s.insert(l);
      }
      return s;
    }
    case LtlKind::Not: return ~states(f->args[0]);
    case LtlKind::And: return states(f->args[0]) & states(f->args[1]);
    case LtlKind::Or: return states(f->args[0]) | states(f->args[1]);
    case LtlKind::Implies: return ~states(f->args[0]) | states(f->args[1]);
    default: throw Error("temporal operator in a state formula: " + to_string(f));
  }
}

std::string WorldModel::atom_text(int var, int value) const {
  const Variable& v = vars_[var];
  if (v.boolean) return value == 1 ? v.name : "!" + v.name;
  int owners = 0;
  for (const Variable& other : vars_) {
    if (!other.boolean &&
        std::find(other.values.begin(), other.values.end(), v.values[value]) !=
            other.values.end()) {
      ++owners;
    }
  }
  return owners == 1 ? v.values[value] : v.name + "=" + v.values[value];
}

std::string WorldModel::format(const Ltl& f) const {
  struct Compact {
    const WorldModel& w;
    Ltl operator()(const Ltl& g) const {
      if (g->kind == LtlKind::Atom) {
        auto [var, value] = w.resolve_atom(g->var, g->value);
        const Variable& v = w.vars_[var];
        if (v.boolean) {
          return value == 1 ? ltl::atom(v.name) : ltl::negate(ltl::atom(v.name));
        }
        std::string text = w.atom_text(var, value);
        return text.find('=') == std::string::npos ? ltl::atom(text)
                                                   : ltl::atom(v.name, v.values[value]);
      }
      if (g->args.empty()) return g;
      std::vector<Ltl> args;
      for (const Ltl& a : g->args) args.push_back((*this)(a));
      return std::make_shared<const LtlNode>(LtlNode{g->kind, {}, {}, std::move(args)});
    }
  };
  return to_string(Compact{*this}(f));
}

std::string WorldModel::format_letter(std::size_t letter) const {
  std::string out;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (i) out += ' ';
    out += atom_text(static_cast<int>(i), value(letter, static_cast<int>(i)));
  }
  return out;
}

Ltl WorldModel::to_formula(const StateSet& set) const {
  if (set.size() != letters_) throw Error("state set over a different world");
  return formula_for(0, 0, set);
}

Ltl WorldModel::formula_for(std::size_t var, std::size_t first, const StateSet& set) const {
  const std::size_t span = var == 0 ? letters_ : stride_[var - 1];
  std::size_t inside = 0;
  for (std::size_t l = first; l < first + span; ++l) inside += set.contains(l) ? 1 : 0;
  if (inside == 0) return ltl::falsity();
  if (inside == span) return ltl::truth();

  const Variable& v = vars_[var];
  std::vector<Ltl> children;
  for (std::size_t x = 0; x < v.values.size(); ++x) {
    children.push_back(formula_for(var + 1, first + x * stride_[var], set));
  }
  std::vector<bool> done(children.size(), false);
  std::vector<Ltl> terms;
  for (std::size_t x = 0; x < children.size(); ++x) {
    if (done[x]) continue;
    std::vector<std::size_t> group;
    for (std::size_t y = x; y < children.size(); ++y) {
      if (!done[y] && equal(children[x], children[y])) {
        group.push_back(y);
        done[y] = true;
      }
    }
    if (children[x]->kind == LtlKind::False) continue;
    if (group.size() == v.values.size()) return children[x];
    Ltl values;
    if (group.size() == 1) {
      values = ltl::atom(v.name, v.values[group[0]]);
    } else if (group.size() + 1 == v.values.size()) {
      std::size_t missing = 0;
      while (std::find(group.begin(), group.end(), missing) != group.end()) ++missing;
      values = ltl::negate(ltl::atom(v.name, v.values[missing]));
    } else {
      std::vector<Ltl> atoms;
      for (std::size_t y : group) atoms.push_back(ltl::atom(v.name, v.values[y]));
      values = ltl::disj(atoms);
    }
    terms.push_back(children[x]->kind == LtlKind::True ? values : ltl::conj(values, children[x]));
  }
  return ltl::disj(terms);
}

std::vector<Ltl> WorldModel::disjointedness() const {
  std::vector<Ltl> out;
  for (const Variable& v : vars_) {
    if (v.boolean) continue;
    std::vector<Ltl> some, exclusive;
    for (std::size_t x = 0; x < v.values.size(); ++x) {
      some.push_back(ltl::atom(v.name, v.values[x]));
      for (std::size_t y = x + 1; y < v.values.size(); ++y) {
        exclusive.push_back(ltl::negate(ltl::conj(ltl::atom(v.name, v.values[x]),
                                                  ltl::atom(v.name, v.values[y]))));
      }
    }
    std::vector<Ltl> parts{ltl::disj(some)};
    parts.insert(parts.end(), exclusive.begin(), exclusive.end());
    out.push_back(ltl::conj(parts));
  }
  return out;
}

Ltl WorldModel::rules_conjunction() const {
  std::vector<Ltl> parts;
  for (const auto& rule : rules_) parts.push_back(rule.second);
  return ltl::conj(parts);
}

WorldModel parse_world(const std::string& text) {
  WorldModel world;
  std::vector<std::pair<std::string, std::pair<std::string, int>>> rules;
  std::optional<std::pair<std::string, int>> init;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream words(line);
    std::string keyword;
    if (!(words >> keyword)) continue;
    if (keyword == "var") {
      std::string name, brace, value;
      if (!(words >> name >> brace) || brace != "{") {
        throw ParseError("expected 'var <name> { values }'", number, 1);
      }
      std::vector<std::string> values;
      bool closed = false;
      while (words >> value) {
        if (value == "}") {
          closed = true;
          break;
        }
        values.push_back(value);
      }
      if (!closed) throw ParseError("missing '}'", number, 1);
      try {
        world.add_variable(name, values);
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(e.what(), number, 1);
      }
    } else if (keyword == "bool") {
      std::string name;
      while (words >> name) world.add_boolean(name);
    } else if (keyword == "rule" || keyword == "init:") {
      std::string rest;
      std::getline(words, rest);
      std::string name = "init";
      if (keyword == "rule") {
        auto colon = rest.find(':');
        if (colon == std::string::npos) throw ParseError("expected 'rule <name>: <formula>'", number, 1);
        name = rest.substr(0, colon);
        name.erase(0, name.find_first_not_of(" \t"));
        name.erase(name.find_last_not_of(" \t") + 1);
        rest = rest.substr(colon + 1);
        rules.push_back({name, {rest, number}});
      } else {
        init = std::make_pair(rest, number);
      }
    } else {
      throw ParseError("unknown keyword '" + keyword + "'", number, 1);
    }
  }
  auto load = [](const std::pair<std::string, int>& src) {
    try {
      return parse_ltl(src.first);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), src.second, 1);
    }
  };
  for (const auto& [name, src] : rules) {
    try {
      world.add_rule(name, load(src));
    } catch (const UnknownAtomError& e) {
      throw ParseError(e.what(), src.second, 1);
    }
  }
  if (init) {
    try {
      world.set_init(load(*init));
    } catch (const UnknownAtomError& e) {
      throw ParseError(e.what(), init->second, 1);
    }
  }
  return world;
}

}  // namespace decstruct
