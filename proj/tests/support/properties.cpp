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
#include "properties.hpp"

#include <algorithm>
#include <sstream>

#include "decstruct/analysis.hpp"
#include "decstruct/io.hpp"
#include "oracles.hpp"

namespace decstruct::oracle {
namespace {

void fail(PropertyResult& r, const std::string& what) {
  if (r.failures++ == 0) r.first_failure = what;
}

std::string describe(const DecisionStructure& z) { return format_structure(z); }

std::vector<NodeSet> members_of(const std::vector<Module>& modules) {
  std::vector<NodeSet> out;
  for (const Module& m : modules) out.push_back(m.members);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_uniform_path(const DecisionStructure& q, const ReturnValue& label) {
  if (q.size() < 2 || q.arcs().size() + 1 != q.size()) return false;
  for (int v = 0; v < static_cast<int>(q.size()); ++v) {
    if (q.out_arcs(v).size() > 1 || q.in_arcs(v).size() > 1) return false;
  }
  for (const Arc& a : q.arcs()) {
    if (a.label != label) return false;
  }
  return true;
}

bool is_prime(const DecisionStructure& q) {
  auto modules = brute_force_modules(q);
  return q.size() >= 3 && modules.size() == 1 && modules[0].size() == q.size();
}

DecisionStructure refold(const DecisionStructure& z, const DecompositionNode& d) {
  if (d.kind == DecompositionKind::Leaf) {
    int v = d.members[0];
    return validate({{z.id(v), z.action(v)}}, {});
  }
  DecisionStructure out = *d.quotient;
  // Quotient node i is expanded by factor i; expand keeps the other nodes in
  // place, so track them by id.
  std::vector<NodeId> ids = d.quotient->ids();
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    DecisionStructure factor = refold(z, d.factors[i]);
    out = expand(out, out.index(ids[i]), factor);
  }
  return out;
}

}  // namespace

PropertyResult check_find_modules(std::uint32_t seed, std::size_t cases) {
  Rng rng(seed);
  PropertyResult r;
  for (; r.cases < cases; ++r.cases) {
    int n = std::uniform_int_distribution<int>(1, 8)(rng);
    int k = std::uniform_int_distribution<int>(1, 3)(rng);
    double density = std::uniform_real_distribution<double>(0.1, 0.9)(rng);
    DecisionStructure z = random_structure(rng, n, k, density);
    if (members_of(find_modules(z)) != brute_force_modules(z)) {
      fail(r, "module lists differ for\n" + describe(z));
    }
  }
  return r;
}

PropertyResult check_decomposition(std::uint32_t seed, std::size_t cases) {
  Rng rng(seed);
  PropertyResult r;
  for (; r.cases < cases; ++r.cases) {
    int n = std::uniform_int_distribution<int>(1, 8)(rng);
    int k = std::uniform_int_distribution<int>(1, 3)(rng);
    DecisionStructure z = random_structure(rng, n, k, 0.5);
    DecompositionNode root = decompose(z);
    std::vector<const DecompositionNode*> stack{&root};
    bool shapes_ok = true;
    while (!stack.empty()) {
      const DecompositionNode* d = stack.back();
      stack.pop_back();
      if (d->kind == DecompositionKind::Path && !is_uniform_path(*d->quotient, d->label)) {
        shapes_ok = false;
      }
      if (d->kind == DecompositionKind::Prime && !is_prime(*d->quotient)) shapes_ok = false;
      for (const auto& f : d->factors) stack.push_back(&f);
    }
    if (!shapes_ok) {
      fail(r, "quotient neither prime nor a uniform path for\n" + describe(z));
      continue;
    }
    if (!structurally_equivalent(refold(z, root), z, true)) {
      fail(r, "refolded decomposition differs from\n" + describe(z));
    }
  }
  return r;
}

PropertyResult check_construction_maps(std::uint32_t seed, std::size_t cases) {
  Rng rng(seed);
  PropertyResult r;
  const std::vector<ReturnValue> bt_values{"s", "f"};
  const std::vector<ReturnValue> kbt_values{"s", "f", "m"};
  for (; r.cases < cases; ++r.cases) {
    int kind = static_cast<int>(r.cases % 4);
    int size = std::uniform_int_distribution<int>(1, 6)(rng);
    if (kind <= 1) {
      const auto& values = kind == 0 ? bt_values : kbt_values;
      Kbt t = random_kbt(rng, size, values);
      DecisionStructure z = kind == 0 ? construct_bt(t) : construct_kbt(t);
      bool ok = true;
      for_each_state(leaves(t), values, [&](const AbstractState& w) {
        if (select(z, w) != tick_kbt(t, w)) ok = false;
      });
      if (!ok) fail(r, "tick and select disagree on " + to_dsl(t));
    } else if (kind == 2) {
      Dt t = random_dt(rng, std::min(size, 5));
      DecisionStructure z = construct_dt(t);
      bool ok = true;
      for_each_state(z.actions(), {kTrue, kFalse}, [&](const AbstractState& w) {
        if (select(z, w) != walk_dt(t, w)) ok = false;
      });
      if (!ok) fail(r, "walk and select disagree on " + to_dsl(t));
    } else {
      TrProgram p = make_tr(size);
      DecisionStructure z = construct_tr(p);
      bool ok = true;
      for_each_state(p.items, {kRuleValue, "s"}, [&](const AbstractState& w) {
        if (select(z, w) != scan_tr(p, w)) ok = false;
      });
      if (!ok) fail(r, "scan and select disagree on " + to_dsl(p));
    }
  }
  return r;
}

PropertyResult check_contraction(std::uint32_t seed, std::size_t cases) {
  Rng rng(seed);
  PropertyResult r;
  std::size_t attempts = 0;
  while (r.cases < cases && attempts++ < 50 * cases) {
    int n = std::uniform_int_distribution<int>(3, 8)(rng);
    int k = std::uniform_int_distribution<int>(1, 3)(rng);
    DecisionStructure z = random_structure(rng, n, k, 0.5);
    std::vector<NodeSet> proper;
    for (const NodeSet& m : nontrivial_modules(z)) proper.push_back(m);
    if (proper.empty()) continue;
    ++r.cases;
    const NodeSet& h =
        proper[std::uniform_int_distribution<std::size_t>(0, proper.size() - 1)(rng)];
    DecisionStructure zh = contract(z, h);
    DecisionStructure inner = induced(z, h);
    const std::string name = contracted_action(z, h);
    std::vector<ReturnValue> values = label_set(k);
    bool ok = true;
    for (int sample = 0; sample < 64 && ok; ++sample) {
      AbstractState w;
      for (const auto& a : z.actions()) {
        auto pick = std::uniform_int_distribution<std::size_t>(0, values.size())(rng);
        if (pick < values.size()) w[a] = values[pick];
      }
      AbstractState wh = w;
      if (auto ret = derived_return(inner, w)) {
        wh[name] = *ret;
      } else {
        wh.erase(name);
      }
      int chosen = select(z, w);
      int chosen_h = select(zh, wh);
      bool in_h = std::binary_search(h.begin(), h.end(), chosen);
      if (zh.action(chosen_h) == name) {
        ok = in_h;
      } else {
        ok = !in_h && zh.id(chosen_h) == z.id(chosen);
      }
      if (derived_return(z, w) != derived_return(zh, wh)) ok = false;
    }
    if (!ok) fail(r, "contraction changes selection for\n" + describe(z));
  }
  return r;
}

PropertyResult check_essential_extract(std::uint32_t seed, std::size_t cases) {
  Rng rng(seed);
  PropertyResult r;
  for (; r.cases < cases; ++r.cases) {
    int n = std::uniform_int_distribution<int>(1, 8)(rng);
    int k = std::uniform_int_distribution<int>(1, 3)(rng);
    // Half of the cases come from trees, which are guaranteed to be k-BTs.
    DecisionStructure z =
        r.cases % 2 == 0
            ? random_structure(rng, n, k, 0.5)
            : construct_kbt(random_kbt(rng, n, label_set(std::max(k, 2))));
    auto t = extract_kbt(z);
    if ((essential(z) == 1) != t.has_value()) {
      fail(r, "essential and extract_kbt disagree for\n" + describe(z));
    } else if (t && !structurally_equivalent(construct_kbt(*t), z, true)) {
      fail(r, "extracted tree " + to_dsl(*t) + " is not equivalent to\n" + describe(z));
    }
  }
  return r;
}

PropertyResult check_counterexample_replay(std::uint32_t seed, std::size_t cases) {
  Rng rng(seed);
  WorldModel world;
  world.add_variable("X", {"x0", "x1", "x2"});
  world.add_boolean("p");
  world.add_boolean("q");
  PropertyResult r;
  std::size_t attempts = 0;
  while (r.cases < cases && attempts++ < 20 * cases) {
    Ltl premise = world.resolve(random_ltl(rng, world, 3));
    Ltl conclusion = world.resolve(random_ltl(rng, world, 3));
    Verdict v = entails(premise, conclusion, world);
    if (v.holds) continue;
    ++r.cases;
    const LassoTrace& trace = *v.counterexample;
    Ltl failed = conjuncts(conclusion)[*v.failed_conjunct];
    if (!lasso_satisfies(premise, world, trace) || lasso_satisfies(failed, world, trace) ||
        lasso_satisfies(conclusion, world, trace)) {
      fail(r, "counterexample does not replay for " + to_string(premise) + " => " +
                  to_string(conclusion));
    }
  }
  return r;
}

}  // namespace decstruct::oracle
