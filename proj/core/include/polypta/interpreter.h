/*
 * Copyright 2026 The polypta Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polypta/program_index.h"

namespace polypta {

using ObjectId = std::uint64_t;

struct ObservedBinding {
  MethodId method = 0;
  std::string var;
  ObjectId object = 0;
  StmtId site = kNoStmt;  // allocation site of `object`

  auto operator<=>(const ObservedBinding&) const = default;
  bool operator==(const ObservedBinding&) const = default;
};

struct ObservedFacts {
  std::set<ObservedBinding> bindings;
  std::vector<std::pair<MethodId, MethodId>> trace;  // (caller, callee)
  std::map<ObjectId, StmtId> objects;
  std::size_t steps = 0;
  bool budget_exhausted = false;
  bool depth_limited = false;

  bool operator==(const ObservedFacts&) const = default;
};

struct InterpreterLimits {
  std::size_t step_budget = 100000;
  std::size_t max_depth = 64;
};

/// Executes the merged program: every top-level host method runs in
/// declaration order over one shared heap, `eval` calls the guest method
/// directly, and guest code reads interface variables as globals. Both
/// branches of an `if` run (then before else), loop bodies run once, and a
/// `return` records the value without leaving the method. Calls on null
/// receivers and loads from null are skipped. Stops at the step budget and
/// returns the partial facts.
ObservedFacts interpret(const ProgramIndex& index,
                        const InterpreterLimits& limits = {});

}  // namespace polypta
