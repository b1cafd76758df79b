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

#include <set>

#include "polypta/pre_analysis.h"

namespace polypta {

struct MonolithicResult {
  VarPointsTo vars;
  FldPointsTo fields;
  std::set<CallNode> reachable;
};

/// Whole-program inclusion analysis that ignores the language boundary:
/// `eval` is a direct call, receiver calls dispatch on the class of the
/// object in either module, and interface variables are globals fed by their
/// host declarations. Solved by plain round-robin iteration; it shares no
/// solver code with the modular pipeline.
MonolithicResult monolithic_andersen(const ProgramIndex& index,
                                     const AnalysisConfig& cfg);

}  // namespace polypta
