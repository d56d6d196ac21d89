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
#include "decstruct/checker.hpp"

#include <algorithm>
#include <cstdint>
#include <deque>
#include <map>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

namespace decstruct {
namespace {

enum class K : std::uint8_t { True, False, Lit, And, Or, Next, Until, Release };

struct Formula {
  K kind;
  int var = -1;
  int val = -1;
  bool positive = true;
  std::vector<int> args;
  int mark = -1;
  bool propositional = false;
};

// One way of satisfying a set of obligations in the current letter: what
// must hold from the next letter on, and which eventualities were deferred.
struct Alt {
  std::vector<int> next;
  std::uint64_t pending = 0;

  bool operator<(const Alt& o) const {
    return std::tie(pending, next) < std::tie(o.pending, o.next);
  }
  bool operator==(const Alt& o) const = default;
};

using AltList = std::vector<Alt>;

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = v.size();
    for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x);
    return h;
  }
};

bool subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

void prune(AltList& alts) {
  std::sort(alts.begin(), alts.end());
  alts.erase(std::unique(alts.begin(), alts.end()), alts.end());
  std::vector<bool> drop(alts.size(), false);
  for (std::size_t i = 0; i < alts.size(); ++i) {
    if (drop[i]) continue;
    for (std::size_t j = 0; j < alts.size(); ++j) {
      if (i == j || drop[j]) continue;
      if ((alts[i].pending & ~alts[j].pending) == 0 && subset(alts[i].next, alts[j].next)) {
        drop[j] = true;
      }
    }
  }
  AltList kept;
  for (std::size_t i = 0; i < alts.size(); ++i) {
    if (!drop[i]) kept.push_back(std::move(alts[i]));
  }
  alts = std::move(kept);
}

AltList product(const AltList& a, const AltList& b) {
  AltList out;
  out.reserve(a.size() * b.size());
  for (const Alt& x : a) {
    for (const Alt& y : b) {
      Alt z;
      z.pending = x.pending | y.pending;
      std::set_union(x.next.begin(), x.next.end(), y.next.begin(), y.next.end(),
                     std::back_inserter(z.next));
      out.push_back(std::move(z));
    }
  }
  if (out.size() > 1) prune(out);
  return out;
}

class Tableau {
 public:
  explicit Tableau(const WorldModel& world) : world_(world), letters_(world.letter_count()) {
    top_ = intern(Formula{K::True, -1, -1, true, {}});
    bottom_ = intern(Formula{K::False, -1, -1, true, {}});
  }

  int top() const { return top_; }
  int bottom() const { return bottom_; }
  std::size_t letters() const { return letters_; }

  // Negation normal form of f (or of !f).
  int convert(const Ltl& f, bool negated) {
    switch (f->kind) {
      case LtlKind::True: return negated ? bottom_ : top_;
      case LtlKind::False: return negated ? top_ : bottom_;
      case LtlKind::Atom: {
        auto [var, val] = world_.resolve_atom(f->var, f->value);
        Formula lit{K::Lit, -1, -1, true, {}};
        lit.var = var;
        lit.val = val;
        lit.positive = !negated;
        return intern(std::move(lit));
      }
      case LtlKind::Not: return convert(f->args[0], !negated);
      case LtlKind::And:
      case LtlKind::Or: {
        int a = convert(f->args[0], negated);
        int b = convert(f->args[1], negated);
        return (f->kind == LtlKind::And) != negated ? conj({a, b}) : disj({a, b});
      }
      case LtlKind::Implies: {
        int a = convert(f->args[0], !negated);
        int b = convert(f->args[1], negated);
        return negated ? conj({a, b}) : disj({a, b});
      }
      case LtlKind::Next: return next(convert(f->args[0], negated));
      case LtlKind::Until:
      case LtlKind::Release: {
        int a = convert(f->args[0], negated);
        int b = convert(f->args[1], negated);
        return (f->kind == LtlKind::Until) != negated ? until(a, b) : release(a, b);
      }
      case LtlKind::Eventually: {
        int a = convert(f->args[0], negated);
        return negated ? release(bottom_, a) : until(top_, a);
      }
      case LtlKind::Always: {
        int a = convert(f->args[0], negated);
        return negated ? until(top_, a) : release(bottom_, a);
      }
    }
    throw Error("malformed formula");
  }

  int conj(std::vector<int> parts) {
    std::vector<int> flat;
    for (int p : parts) {
      const Formula& f = fs_[p];
      if (f.kind == K::False) return bottom_;
      if (f.kind == K::True) continue;
      if (f.kind == K::And) {
        flat.insert(flat.end(), f.args.begin(), f.args.end());
      } else {
        flat.push_back(p);
      }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return top_;
    if (flat.size() == 1) return flat[0];
    return intern({K::And, -1, -1, true, std::move(flat)});
  }

  int disj(std::vector<int> parts) {
    std::vector<int> flat;
    for (int p : parts) {
      const Formula& f = fs_[p];
      if (f.kind == K::True) return top_;
      if (f.kind == K::False) continue;
      if (f.kind == K::Or) {
        flat.insert(flat.end(), f.args.begin(), f.args.end());
      } else {
        flat.push_back(p);
      }
    }
    std::sort(flat.begin(), flat.end());
    flat.erase(std::unique(flat.begin(), flat.end()), flat.end());
    if (flat.empty()) return bottom_;
    if (flat.size() == 1) return flat[0];
    return intern({K::Or, -1, -1, true, std::move(flat)});
  }

  int next(int a) {
    if (a == top_ || a == bottom_) return a;
    return intern({K::Next, -1, -1, true, {a}});
  }

  int until(int a, int b) {
    if (b == top_ || b == bottom_) return b;
    if (a == bottom_) return b;
    return intern({K::Until, -1, -1, true, {a, b}});
  }

  int release(int a, int b) {
    if (b == top_ || b == bottom_) return b;
    if (a == top_) return b;
    return intern({K::Release, -1, -1, true, {a, b}});
  }

  const AltList& expand(int f, std::size_t letter) {
    prepare(f);
    return lists_[table_[f][letter]];
  }

  const StateSet& viable(int f) {
    prepare(f);
    return viable_[f];
  }

 private:
  int intern(Formula f) {
    auto key = std::make_tuple(static_cast<int>(f.kind), f.var, f.val, f.positive, f.args);
    auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(fs_.size());
    if (f.kind == K::Until) {
      if (marks_ == 64) throw Error("formula has more than 64 eventualities");
      f.mark = marks_++;
    }
    f.propositional = f.kind == K::True || f.kind == K::False || f.kind == K::Lit;
    if (f.kind == K::And || f.kind == K::Or) {
      f.propositional = std::all_of(f.args.begin(), f.args.end(),
                                    [&](int a) { return fs_[a].propositional; });
    }
    StateSet truth(letters_);
    if (f.propositional) {
      switch (f.kind) {
        case K::True: truth = StateSet(letters_, true); break;
        case K::False: break;
        case K::Lit:
          for (std::size_t l = 0; l < letters_; ++l) {
            if ((world_.value(l, f.var) == f.val) == f.positive) truth.insert(l);
          }
          break;
        case K::And:
          truth = StateSet(letters_, true);
          for (int a : f.args) truth &= truth_[a];
          break;
        default:
          for (int a : f.args) truth |= truth_[a];
          break;
      }
    }
    fs_.push_back(std::move(f));
    truth_.push_back(std::move(truth));
    table_.emplace_back();
    viable_.emplace_back();
    index_.emplace(std::move(key), id);
    return id;
  }

  int store(AltList list) {
    auto it = list_index_.find(list);
    if (it != list_index_.end()) return it->second;
    int id = static_cast<int>(lists_.size());
    list_index_.emplace(list, id);
    lists_.push_back(std::move(list));
    return id;
  }

  void prepare(int f) {
    if (!table_[f].empty()) return;
    for (int a : fs_[f].args) prepare(a);
    std::vector<int> row(letters_);
    StateSet ok(letters_);
    for (std::size_t l = 0; l < letters_; ++l) {
      row[l] = store(compute(f, l));
      if (!lists_[row[l]].empty()) ok.insert(l);
    }
    table_[f] = std::move(row);
    viable_[f] = std::move(ok);
  }

  const AltList& cached(int f, std::size_t letter) { return lists_[table_[f][letter]]; }

  AltList compute(int id, std::size_t letter) {
    const Formula& f = fs_[id];
    static const AltList kSatisfied{Alt{}};
    if (f.propositional) return truth_[id].contains(letter) ? kSatisfied : AltList{};
    switch (f.kind) {
      case K::And: {
        AltList acc = kSatisfied;
        for (int a : f.args) {
          acc = product(acc, cached(a, letter));
          if (acc.empty()) break;
        }
        return acc;
      }
      case K::Or: {
        AltList acc;
        for (int a : f.args) {
          const AltList& part = cached(a, letter);
          acc.insert(acc.end(), part.begin(), part.end());
        }
        if (acc.size() > 1) prune(acc);
        return acc;
      }
      case K::Next: return AltList{Alt{{f.args[0]}, 0}};
      case K::Until: {
        AltList acc = cached(f.args[1], letter);
        AltList later = product(cached(f.args[0], letter),
                                AltList{Alt{{id}, std::uint64_t{1} << f.mark}});
        acc.insert(acc.end(), later.begin(), later.end());
        if (acc.size() > 1) prune(acc);
        return acc;
      }
      case K::Release: {
        AltList acc = product(cached(f.args[0], letter), cached(f.args[1], letter));
        AltList later = product(cached(f.args[1], letter), AltList{Alt{{id}, 0}});
        acc.insert(acc.end(), later.begin(), later.end());
        if (acc.size() > 1) prune(acc);
        return acc;
      }
      default: throw Error("malformed formula");
    }
  }

  const WorldModel& world_;
  std::size_t letters_;
  int top_ = 0;
  int bottom_ = 0;
  int marks_ = 0;
  std::vector<Formula> fs_;
  std::vector<StateSet> truth_;
  std::map<std::tuple<int, int, int, bool, std::vector<int>>, int> index_;
  std::vector<std::vector<int>> table_;
  std::vector<StateSet> viable_;
  std::vector<AltList> lists_;
  std::map<AltList, int> list_index_;
};

struct Edge {
  int target;
  std::uint32_t letter;
  std::uint64_t pending;
};

class Search {
 public:
  Search(Tableau& tableau, std::size_t max_states, std::size_t bound)
      : t_(tableau), max_states_(max_states), bound_(bound) {}

  std::optional<LassoTrace> run(int formula) {
    intern({formula}, -1, 0);
    for (std::size_t s = 0; s < states_.size(); ++s) {
      if (bound_ > 0 && depth_[s] >= bound_) {
        truncated_ = true;
        continue;
      }
      explore(static_cast<int>(s));
    }
    return lasso();
  }

  std::size_t states() const { return states_.size(); }
  bool truncated() const { return truncated_; }

 private:
  int intern(std::vector<int> obligations, int parent, std::uint32_t letter) {
    auto it = index_.find(obligations);
    if (it != index_.end()) return it->second;
    int id = static_cast<int>(states_.size());
    if (states_.size() >= max_states_) throw ResourceLimitError(states_.size(), false);
    index_.emplace(obligations, id);
    states_.push_back(std::move(obligations));
    parent_.push_back({parent, letter});
    depth_.push_back(parent < 0 ? 0 : depth_[parent] + 1);
    edges_.emplace_back();
    return id;
  }

  void explore(int s) {
    std::vector<int> obligations = states_[s];
    if (obligations.size() == 1 && obligations[0] == t_.bottom()) return;
    StateSet letters(t_.letters(), true);
    for (int f : obligations) letters &= t_.viable(f);
    std::unordered_set<std::uint64_t> seen;
    std::vector<Edge> out;
    for (std::size_t l : letters.elements()) {
      AltList alts{Alt{}};
      for (int f : obligations) {
        alts = product(alts, t_.expand(f, l));
        if (alts.empty()) break;
      }
      for (Alt& alt : alts) {
        int target = intern(std::move(alt.next), s, static_cast<std::uint32_t>(l));
        std::uint64_t key = static_cast<std::uint64_t>(target) * 0x9E3779B97F4A7C15ull ^ alt.pending;
        bool fresh = true;
        if (!seen.insert(key).second) {
          for (const Edge& e : out) {
            if (e.target == target && e.pending == alt.pending) fresh = false;
          }
        }
        if (fresh) out.push_back({target, static_cast<std::uint32_t>(l), alt.pending});
      }
    }
    edges_[s] = std::move(out);
  }

  void tarjan() {
    const int n = static_cast<int>(states_.size());
    comp_.assign(n, -1);
    std::vector<int> low(n, 0), order(n, -1), stack;
    std::vector<bool> on_stack(n, false);
    int counter = 0, comps = 0;
    for (int root = 0; root < n; ++root) {
      if (order[root] != -1) continue;
      std::vector<std::pair<int, std::size_t>> call{{root, 0}};
      order[root] = low[root] = counter++;
      stack.push_back(root);
      on_stack[root] = true;
      while (!call.empty()) {
        auto& [v, i] = call.back();
        if (i < edges_[v].size()) {
          int w = edges_[v][i++].target;
          if (order[w] == -1) {
            order[w] = low[w] = counter++;
            stack.push_back(w);
            on_stack[w] = true;
            call.push_back({w, 0});
          } else if (on_stack[w]) {
            low[v] = std::min(low[v], order[w]);
          }
          continue;
        }
        if (low[v] == order[v]) {
          int w;
          do {
            w = stack.back();
            stack.pop_back();
            on_stack[w] = false;
            comp_[w] = comps;
          } while (w != v);
          ++comps;
        }
        int done = v;
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      }
    }
    comp_count_ = comps;
  }

  // Letters along a shortest path from a to b inside a's component.
  std::vector<std::size_t> route(int a, int b) {
    if (a == b) return {};
    std::unordered_map<int, std::pair<int, std::uint32_t>> prev;
    std::deque<int> queue{a};
    prev[a] = {-1, 0};
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      for (const Edge& e : edges_[v]) {
        if (comp_[e.target] != comp_[a] || prev.count(e.target)) continue;
        prev[e.target] = {v, e.letter};
        if (e.target == b) {
          std::vector<std::size_t> letters;
          for (int x = b; x != a; x = prev[x].first) letters.push_back(prev[x].second);
          std::reverse(letters.begin(), letters.end());
          return letters;
        }
        queue.push_back(e.target);
      }
    }
    throw Error("internal error: no route inside a strongly connected component");
  }

  std::optional<LassoTrace> lasso() {
    tarjan();
    const int n = static_cast<int>(states_.size());
    std::vector<std::uint64_t> common(comp_count_, ~std::uint64_t{0});
    std::vector<bool> cyclic(comp_count_, false);
    for (int v = 0; v < n; ++v) {
      for (const Edge& e : edges_[v]) {
        if (comp_[e.target] != comp_[v]) continue;
        cyclic[comp_[v]] = true;
        common[comp_[v]] &= e.pending;
      }
    }
    int start = -1;
    for (int v = 0; v < n && start < 0; ++v) {
      if (cyclic[comp_[v]] && common[comp_[v]] == 0) start = v;
    }
    if (start < 0) return std::nullopt;

    LassoTrace trace;
    for (int v = start; parent_[v].first >= 0; v = parent_[v].first) {
      trace.prefix.push_back(parent_[v].second);
    }
    std::reverse(trace.prefix.begin(), trace.prefix.end());

    // Pick internal edges that together clear every mark, then chain them.
    const int c = comp_[start];
    std::uint64_t seen_marks = 0;
    for (int v = 0; v < n; ++v) {
      if (comp_[v] != c) continue;
      for (const Edge& e : edges_[v]) {
        if (comp_[e.target] == c) seen_marks |= e.pending;
      }
    }
    std::vector<std::pair<int, const Edge*>> chosen;
    std::uint64_t cleared = 0;
    for (int m = 0; m < 64; ++m) {
      std::uint64_t bit = std::uint64_t{1} << m;
      if (!(seen_marks & bit) || (cleared & bit)) continue;
      for (int v = 0; v < n && !(cleared & bit); ++v) {
        if (comp_[v] != c) continue;
        for (const Edge& e : edges_[v]) {
          if (comp_[e.target] == c && !(e.pending & bit)) {
            chosen.push_back({v, &e});
            cleared |= ~e.pending & seen_marks;
            break;
          }
        }
      }
    }
    if (chosen.empty()) {
      for (const Edge& e : edges_[start]) {
        if (comp_[e.target] == c) {
          chosen.push_back({start, &e});
          break;
        }
      }
      if (chosen.empty()) {
        for (int v = 0; v < n && chosen.empty(); ++v) {
          if (comp_[v] != c) continue;
          for (const Edge& e : edges_[v]) {
            if (comp_[e.target] == c) {
              chosen.push_back({v, &e});
              break;
            }
          }
        }
      }
    }
    int at = start;
    for (const auto& [from, edge] : chosen) {
      auto step = route(at, from);
      trace.cycle.insert(trace.cycle.end(), step.begin(), step.end());
      trace.cycle.push_back(edge->letter);
      at = edge->target;
    }
    auto back = route(at, start);
    trace.cycle.insert(trace.cycle.end(), back.begin(), back.end());
    return trace;
  }

  Tableau& t_;
  std::size_t max_states_;
  std::size_t bound_;
  bool truncated_ = false;
  std::vector<std::vector<int>> states_;
  std::vector<std::size_t> depth_;
  std::unordered_map<std::vector<int>, int, VecHash> index_;
  std::vector<std::pair<int, std::uint32_t>> parent_;
  std::vector<std::vector<Edge>> edges_;
  std::vector<int> comp_;
  int comp_count_ = 0;
};

}  // namespace

std::optional<LassoTrace> find_lasso(const Ltl& f, const WorldModel& world,
                                     const CheckOptions& options,
                                     std::size_t* states_explored, bool* truncated) {
  Tableau tableau(world);
  int root = tableau.convert(f, false);
  Search search(tableau, options.max_states, options.bound);
  auto result = search.run(root);
  if (states_explored) *states_explored = search.states();
  if (truncated) *truncated = search.truncated();
  return result;
}

Verdict entails(const Ltl& premise, const Ltl& conclusion, const WorldModel& world,
                const CheckOptions& options) {
  std::vector<Ltl> parts = options.split_conclusion ? conjuncts(conclusion)
                                                    : std::vector<Ltl>{conclusion};
  Verdict verdict;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    std::size_t explored = 0;
    bool truncated = false;
    std::optional<LassoTrace> trace;
    try {
      trace = find_lasso(ltl::conj(premise, ltl::negate(parts[i])), world, options, &explored,
                         &truncated);
    } catch (const ResourceLimitError& e) {
      throw ResourceLimitError(verdict.states_explored + e.states(), i > 0);
    }
    verdict.states_explored += explored;
    verdict.bounded = verdict.bounded || truncated;
    if (trace) {
      verdict.holds = false;
      verdict.counterexample = std::move(trace);
      verdict.failed_conjunct = i;
      return verdict;
    }
  }
  return verdict;
}

}  // namespace decstruct
