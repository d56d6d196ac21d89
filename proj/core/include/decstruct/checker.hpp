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
#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "decstruct/ltl.hpp"
#include "decstruct/world.hpp"

namespace decstruct {

// Infinite sequence of letters prefix . cycle . cycle ...
struct LassoTrace {
  std::vector<std::size_t> prefix;
  std::vector<std::size_t> cycle;
};

struct Verdict {
  bool holds = true;
  std::optional<LassoTrace> counterexample;
  // Index of the conclusion conjunct the counterexample falsifies.
  std::optional<std::size_t> failed_conjunct;
  std::size_t states_explored = 0;
  // Set when a depth bound cut the search short. holds then only means that
  // no counterexample was found within the bound.
  bool bounded = false;
};

struct CheckOptions {
  std::size_t max_states = 5'000'000;
  // Check the top-level conjuncts of the conclusion one at a time and report
  // a counterexample for the first one that fails.
  bool split_conclusion = true;
  // When nonzero, product states deeper than this many steps from the initial
  // state are not expanded. Counterexamples found are genuine; absence of one
  // is not a proof.
  std::size_t bound = 0;
};

class ResourceLimitError : public Error {
 public:
  ResourceLimitError(std::size_t states, bool partial)
      : Error("state limit reached after " + std::to_string(states) +
              " product states; export the obligation and check it externally"),
        states_(states),
        partial_(partial) {}

  std::size_t states() const { return states_; }
  // True when earlier conjuncts were already decided.
  bool partial() const { return partial_; }

 private:
  std::size_t states_;
  bool partial_;
};

// A lasso satisfying f, whose letters range over world states, if one exists.
// The search explores the on-the-fly tableau breadth first, so the prefix is
// as short as possible.
std::optional<LassoTrace> find_lasso(const Ltl& f, const WorldModel& world,
                                     const CheckOptions& options = {},
                                     std::size_t* states_explored = nullptr,
                                     bool* truncated = nullptr);

// Whether every trace over the world satisfying premise satisfies conclusion.
Verdict entails(const Ltl& premise, const Ltl& conclusion, const WorldModel& world,
                const CheckOptions& options = {});

}  // namespace decstruct
