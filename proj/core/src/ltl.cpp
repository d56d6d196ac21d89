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
#include "decstruct/ltl.hpp"

#include <cctype>

namespace decstruct {
namespace ltl {
namespace {

Ltl make(LtlKind kind, std::vector<Ltl> args = {}) {
  return std::make_shared<const LtlNode>(LtlNode{kind, {}, {}, std::move(args)});
}

}  // namespace

Ltl truth() {
  static const Ltl t = make(LtlKind::True);
  return t;
}

Ltl falsity() {
  static const Ltl f = make(LtlKind::False);
  return f;
}

Ltl atom(std::string name) {
  return std::make_shared<const LtlNode>(LtlNode{LtlKind::Atom, {}, std::move(name), {}});
}

Ltl atom(std::string var, std::string value) {
  return std::make_shared<const LtlNode>(
      LtlNode{LtlKind::Atom, std::move(var), std::move(value), {}});
}

Ltl negate(Ltl a) { return make(LtlKind::Not, {std::move(a)}); }
Ltl conj(Ltl a, Ltl b) { return make(LtlKind::And, {std::move(a), std::move(b)}); }
Ltl disj(Ltl a, Ltl b) { return make(LtlKind::Or, {std::move(a), std::move(b)}); }

Ltl conj(const std::vector<Ltl>& parts) {
  if (parts.empty()) return truth();
  Ltl out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = conj(out, parts[i]);
  return out;
}

Ltl disj(const std::vector<Ltl>& parts) {
  if (parts.empty()) return falsity();
  Ltl out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = disj(out, parts[i]);
  return out;
}

Ltl implies(Ltl a, Ltl b) { return make(LtlKind::Implies, {std::move(a), std::move(b)}); }
Ltl next(Ltl a) { return make(LtlKind::Next, {std::move(a)}); }
Ltl until(Ltl a, Ltl b) { return make(LtlKind::Until, {std::move(a), std::move(b)}); }
Ltl release(Ltl a, Ltl b) { return make(LtlKind::Release, {std::move(a), std::move(b)}); }
Ltl eventually(Ltl a) { return make(LtlKind::Eventually, {std::move(a)}); }
Ltl always(Ltl a) { return make(LtlKind::Always, {std::move(a)}); }

}  // namespace ltl

namespace {

bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'';
}

class LtlParser {
 public:
  explicit LtlParser(const std::string& text) : text_(text) {}

  Ltl parse() {
    Ltl f = implication();
    skip();
    if (pos_ < text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what, 1, static_cast<int>(pos_) + 1);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(const std::string& token) {
    skip();
    if (text_.compare(pos_, token.size(), token) != 0) return false;
    // Single-letter operators must not swallow the start of a name.
    if (std::isalpha(static_cast<unsigned char>(token[0])) &&
        pos_ + token.size() < text_.size() && name_char(text_[pos_ + token.size()])) {
      return false;
    }
    pos_ += token.size();
    return true;
  }

  Ltl implication() {
    Ltl left = disjunction();
    if (eat("->")) return ltl::implies(left, implication());
    return left;
  }

  Ltl disjunction() {
    Ltl left = conjunction();
    while (eat("|")) left = ltl::disj(left, conjunction());
    return left;
  }

  Ltl conjunction() {
    Ltl left = binary_temporal();
    while (eat("&")) left = ltl::conj(left, binary_temporal());
    return left;
  }

  Ltl binary_temporal() {
    Ltl left = unary();
    if (eat("U")) return ltl::until(left, binary_temporal());
    if (eat("R")) return ltl::release(left, binary_temporal());
    return left;
  }

  Ltl unary() {
    if (eat("!")) return ltl::negate(unary());
    if (eat("X")) return ltl::next(unary());
    if (eat("F")) return ltl::eventually(unary());
    if (eat("G")) return ltl::always(unary());
    return primary();
  }

  std::string name() {
    skip();
    std::size_t start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a formula");
    return text_.substr(start, pos_ - start);
  }

  Ltl primary() {
    if (eat("(")) {
      Ltl inner = implication();
      if (!eat(")")) fail("expected ')'");
      return inner;
    }
    std::string first = name();
    skip();
    if (pos_ < text_.size() && text_[pos_] == '=') {
      ++pos_;
      return ltl::atom(first, name());
    }
    if (first == "true") return ltl::truth();
    if (first == "false") return ltl::falsity();
    return ltl::atom(first);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

// Binding strength, larger binds tighter.
int precedence(LtlKind kind) {
  switch (kind) {
    case LtlKind::Implies: return 1;
    case LtlKind::Or: return 2;
    case LtlKind::And: return 3;
    case LtlKind::Until:
    case LtlKind::Release: return 4;
    case LtlKind::Not:
    case LtlKind::Next:
    case LtlKind::Eventually:
    case LtlKind::Always: return 5;
    default: return 6;
  }
}

void print(const Ltl& f, std::string& out);

void print_child(const Ltl& child, bool parens, std::string& out) {
  if (parens) out += '(';
  print(child, out);
  if (parens) out += ')';
}

void print(const Ltl& f, std::string& out) {
  const int p = precedence(f->kind);
  switch (f->kind) {
    case LtlKind::True: out += "true"; return;
    case LtlKind::False: out += "false"; return;
    case LtlKind::Atom:
      out += f->var.empty() ? f->value : f->var + "=" + f->value;
      return;
    case LtlKind::Not:
    case LtlKind::Next:
    case LtlKind::Eventually:
    case LtlKind::Always: {
      const char* op = f->kind == LtlKind::Not    ? "!"
                       : f->kind == LtlKind::Next ? "X "
                       : f->kind == LtlKind::Eventually ? "F "
                                                        : "G ";
      out += op;
      print_child(f->args[0], precedence(f->args[0]->kind) < p, out);
      return;
    }
    case LtlKind::And:
    case LtlKind::Or: {
      const char* op = f->kind == LtlKind::And ? " & " : " | ";
      print_child(f->args[0], precedence(f->args[0]->kind) < p, out);
      out += op;
      print_child(f->args[1], precedence(f->args[1]->kind) <= p, out);
      return;
    }
    case LtlKind::Implies:
    case LtlKind::Until:
    case LtlKind::Release: {
      const char* op = f->kind == LtlKind::Implies ? " -> "
                       : f->kind == LtlKind::Until ? " U "
                                                   : " R ";
      print_child(f->args[0], precedence(f->args[0]->kind) <= p, out);
      out += op;
      print_child(f->args[1], precedence(f->args[1]->kind) < p, out);
      return;
    }
  }
}

void collect_conjuncts(const Ltl& f, std::vector<Ltl>& out) {
  if (f->kind == LtlKind::And) {
    collect_conjuncts(f->args[0], out);
    collect_conjuncts(f->args[1], out);
  } else {
    out.push_back(f);
  }
}

}  // namespace

Ltl parse_ltl(const std::string& text) { return LtlParser(text).parse(); }

std::string to_string(const Ltl& f) {
  std::string out;
  print(f, out);
  return out;
}

bool equal(const Ltl& a, const Ltl& b) {
  if (a == b) return true;
  if (a->kind != b->kind || a->var != b->var || a->value != b->value ||
      a->args.size() != b->args.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a->args.size(); ++i) {
    if (!equal(a->args[i], b->args[i])) return false;
  }
  return true;
}

bool is_propositional(const Ltl& f) {
  switch (f->kind) {
    case LtlKind::Next:
    case LtlKind::Until:
    case LtlKind::Release:
    case LtlKind::Eventually:
    case LtlKind::Always: return false;
    default: break;
  }
  for (const Ltl& a : f->args) {
    if (!is_propositional(a)) return false;
  }
  return true;
}

std::vector<Ltl> conjuncts(const Ltl& f) {
  std::vector<Ltl> out;
  collect_conjuncts(f, out);
  return out;
}

}  // namespace decstruct
