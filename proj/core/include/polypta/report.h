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

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "polypta/compare.h"
#include "polypta/fixpoint.h"
#include "polypta/interpreter.h"
#include "polypta/taint.h"

namespace polypta {

inline constexpr const char* kResultSchema = "polypta/result/v1";
inline constexpr const char* kLeakSchema = "polypta/leaks/v1";
inline constexpr const char* kStatsSchema = "polypta/stats/v1";
inline constexpr const char* kCompareSchema = "polypta/compare/v1";

/// Deterministic: identical results serialize to identical bytes.
nlohmann::json result_to_json(const ModularAnalysisResult& result);

/// Iteration statistics, plus wall-clock time when `millis` >= 0.
nlohmann::json stats_to_json(const ModularAnalysisResult& result,
                             double millis = -1);

nlohmann::json leaks_to_json(const std::vector<LeakReport>& leaks,
                             const ProgramIndex& index);

nlohmann::json comparison_to_json(const CorpusComparison& cmp,
                                  const AnalysisConfig& cfg);

/// One JSON object per binding, then one per call.
std::string facts_to_jsonl(const ObservedFacts& facts,
                           const ProgramIndex& index);

/// Nodes are `module::method`; edges carry kind="intra|eval|guest-to-bridge|bridge".
std::string interlang_to_dot(const InterlangCallGraph& graph,
                             const ProgramIndex& index);

}  // namespace polypta
