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

#include <memory>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "polypta/polypta.h"

namespace polypta::testing {

/// A parsed program together with its index; the index refers to the
/// program, so both live on the heap.
struct Loaded {
  std::unique_ptr<Program> program;
  std::unique_ptr<ProgramIndex> index;
};

Loaded load_text(std::string_view text);
Loaded load_program(Program program);

/// Path below tests/data.
std::string data_path(const std::string& relative);
Loaded load_data(const std::string& relative);
Loaded running_example();

/// Names of the curated bridge programs, the running example first.
std::vector<std::string> curated_names();

MethodId method_id(const ProgramIndex& index, ModuleId module,
                   std::string_view name);

std::set<std::string> labels(const ProgramIndex& index, const HeapSet& heap);

/// Allocation labels of `var` in `method`, collapsed over contexts.
std::set<std::string> pts(const PreAnalysis& pa, std::string_view method,
                          std::string_view var);

/// Allocation site of the object labelled `label`.
StmtId site_of(const ProgramIndex& index, std::string_view label);

/// Access path over bases v0..v{vars-1}: plain, local field or interface
/// field.
AccessPath random_path(std::mt19937_64& rng, std::size_t vars);

/// Random inclusion system over at most 50 distinct access paths.
ConstraintSet random_constraint_system(std::mt19937_64& rng);

/// Reference solver: re-applies every constraint until nothing changes.
FunctionSummary naive_solve(const ConstraintSet& cs);

}  // namespace polypta::testing
