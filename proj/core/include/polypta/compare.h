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

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "polypta/fixpoint.h"
#include "polypta/interpreter.h"
#include "polypta/monolithic.h"

namespace polypta {

/// (scope, variable) -> allocation sites. Scopes are `module::method`, or
/// `guest::<iface>` for interface variables read by guest code.
using CollapsedKey = std::pair<std::string, std::string>;
using CollapsedPointsTo = std::map<CollapsedKey, std::set<StmtId>>;

std::string scope_label(const ProgramIndex& index, MethodId method);

/// Drops contexts and empty entries.
CollapsedPointsTo collapse(const ProgramIndex& index, const VarPointsTo& pts);
CollapsedPointsTo collapse(const ModularAnalysisResult& result);
CollapsedPointsTo collapse(const ProgramIndex& index,
                           const ObservedFacts& facts);

struct UncoveredFact {
  CollapsedKey key;
  StmtId site = kNoStmt;
};

/// Observed facts missing from `computed`.
std::vector<UncoveredFact> uncovered(const CollapsedPointsTo& observed,
                                     const CollapsedPointsTo& computed);

struct PointsToDelta {
  CollapsedKey key;
  std::set<StmtId> only_left;
  std::set<StmtId> only_right;
};

std::vector<PointsToDelta> diff(const CollapsedPointsTo& left,
                                const CollapsedPointsTo& right);

/// Pointwise `big` ⊇ `small`.
bool includes(const CollapsedPointsTo& big, const CollapsedPointsTo& small);

std::size_t fact_count(const CollapsedPointsTo& pts);

struct ProgramComparison {
  std::size_t observed_facts = 0;
  std::vector<UncoveredFact> uncovered;       // interpreter vs modular
  std::vector<UncoveredFact> mono_uncovered;  // interpreter vs monolithic
  std::vector<PointsToDelta> deltas;          // modular vs monolithic
  std::size_t iterations = 0;
  std::size_t iteration_bound = 0;
  std::size_t monotonicity_violations = 0;
  bool budget_exhausted = false;
};

ProgramComparison compare_program(const ProgramIndex& index,
                                  const AnalysisConfig& cfg,
                                  const FixpointOptions& opts = {});

struct CorpusComparison {
  std::size_t programs = 0;
  std::size_t sound_programs = 0;
  std::size_t observed_facts = 0;
  std::size_t uncovered_facts = 0;
  std::size_t equal_to_monolithic = 0;
  std::size_t precision_loss_programs = 0;  // modular has facts beyond it
  std::size_t missing_vs_monolithic = 0;    // monolithic has facts beyond it
  std::size_t extra_facts = 0;
  std::vector<std::string> notes;

  double pass_rate() const {
    return programs == 0 ? 1.0
                         : static_cast<double>(sound_programs) /
                               static_cast<double>(programs);
  }
};

CorpusComparison compare_corpus(const std::vector<Program>& programs,
                                const AnalysisConfig& cfg,
                                const FixpointOptions& opts = {});

}  // namespace polypta
