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
#include <cctype>
#include <sstream>

#include "decstruct/architectures.hpp"

namespace decstruct {
namespace {

struct Token {
  enum Kind { Open, Close, Word, End } kind;
  std::string text;
  int line;
  int column;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip();
    int line = line_, column = column_;
    if (pos_ >= text_.size()) return {Token::End, "", line, column};
    char c = text_[pos_];
    if (c == '(' || c == ')') {
      advance();
      return {c == '(' ? Token::Open : Token::Close, std::string(1, c), line, column};
    }
    std::string word;
    if (c == '"') {
      advance();
      while (pos_ < text_.size() && text_[pos_] != '"') {
        if (text_[pos_] == '\\' && pos_ + 1 < text_.size()) advance();
        word += text_[pos_];
        advance();
      }
      if (pos_ >= text_.size()) throw ParseError("unterminated quoted name", line, column);
      advance();
      return {Token::Word, word, line, column};
    }
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
           text_[pos_] != '(' && text_[pos_] != ')' && text_[pos_] != ';') {
      word += text_[pos_];
      advance();
    }
    return {Token::Word, word, line, column};
  }

 private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
};

class Parser {
 public:
  explicit Parser(const std::string& text) : lexer_(text) { shift(); }

  Architecture parse() {
    Architecture result = top();
    if (tok_.kind != Token::End) fail("unexpected trailing input '" + tok_.text + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what, tok_.line, tok_.column);
  }

  void shift() { tok_ = lexer_.next(); }

  std::string word() {
    if (tok_.kind != Token::Word) fail("expected a name");
    std::string w = tok_.text;
    shift();
    return w;
  }

  void expect_close() {
    if (tok_.kind != Token::Close) fail("expected ')'");
    shift();
  }

  Architecture top() {
    if (tok_.kind == Token::Word) return Kbt::leaf(word());
    if (tok_.kind != Token::Open) fail("expected '(' or a name");
    shift();
    if (tok_.kind != Token::Word) fail("expected a form name");
    std::string head = tok_.text;
    if (head == "dt") {
      shift();
      return dt_body();
    }
    if (head == "tr") {
      shift();
      TrProgram p;
      while (tok_.kind == Token::Word) p.items.push_back(word());
      if (p.items.empty()) fail("(tr ...) needs at least one action");
      expect_close();
      return p;
    }
    return kbt_body();
  }

  Kbt kbt() {
    if (tok_.kind == Token::Word) return Kbt::leaf(word());
    if (tok_.kind != Token::Open) fail("expected '(' or a name");
    shift();
    return kbt_body();
  }

  // After the opening parenthesis.
  Kbt kbt_body() {
    std::string head = word();
    ReturnValue op;
    if (head == "seq") {
      op = kSuccess;
    } else if (head == "fb") {
      op = kFailure;
    } else if (head == "op") {
      op = word();
    } else {
      fail("unknown form '" + head + "'");
    }
    std::vector<Kbt> children;
    while (tok_.kind == Token::Word || tok_.kind == Token::Open) children.push_back(kbt());
    if (children.empty()) fail("operator needs at least one child");
    expect_close();
    return Kbt::node(op, std::move(children));
  }

  Dt dt() {
    if (tok_.kind == Token::Word) return Dt::leaf(word());
    if (tok_.kind != Token::Open) fail("expected '(' or a name");
    shift();
    if (word() != "dt") fail("decision tree branches must be leaves or (dt ...)");
    return dt_body();
  }

  // After "(dt".
  Dt dt_body() {
    std::string p = word();
    Dt yes = dt();
    Dt no = dt();
    expect_close();
    return Dt::predicate(p, std::move(yes), std::move(no));
  }

  Lexer lexer_;
  Token tok_{Token::End, "", 0, 0};
};

std::string name(const std::string& n) {
  bool plain = !n.empty() && n != "seq" && n != "fb" && n != "op" && n != "dt" && n != "tr";
  for (char c : n) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"' ||
        c == ';') {
      plain = false;
    }
  }
  if (plain) return n;
  std::string quoted = "\"";
  for (char c : n) {
    if (c == '"' || c == '\\') quoted += '\\';
    quoted += c;
  }
  return quoted + "\"";
}

void print(const Kbt& t, std::ostream& os) {
  if (t.is_leaf()) {
    os << name(t.action);
    return;
  }
  if (t.op == kSuccess) {
    os << "(seq";
  } else if (t.op == kFailure) {
    os << "(fb";
  } else {
    os << "(op " << name(t.op);
  }
  for (const Kbt& c : t.children) {
    os << ' ';
    print(c, os);
  }
  os << ')';
}

void print(const Dt& t, std::ostream& os) {
  if (t.is_leaf()) {
    os << name(t.action);
    return;
  }
  os << "(dt " << name(t.action) << ' ';
  print(t.branches[0], os);
  os << ' ';
  print(t.branches[1], os);
  os << ')';
}

}  // namespace

Architecture parse_architecture(const std::string& text) { return Parser(text).parse(); }

std::string to_dsl(const Kbt& t) {
  std::ostringstream os;
  print(t, os);
  return os.str();
}

std::string to_dsl(const Dt& t) {
  std::ostringstream os;
  print(t, os);
  return os.str();
}

std::string to_dsl(const TrProgram& p) {
  std::string out = "(tr";
  for (const auto& item : p.items) out += " " + name(item);
  return out + ")";
}

std::string to_dsl(const Architecture& a) {
  return std::visit([](const auto& x) { return to_dsl(x); }, a);
}

}  // namespace decstruct
