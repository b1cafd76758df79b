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
#include <stdexcept>
#include <string>
#include <vector>

#include "polypta/interlang_cg.h"
#include "polypta/pre_analysis.h"
#include "polypta/summary.h"

namespace polypta {

/// An internal invariant failed (non-monotone step, iteration cap reached).
class InvariantViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FixpointOptions {
  std::size_t iteration_cap = 100;
  bool specialize = true;  // false: stop after the pre-analyses
};

struct IterationStats {
  std::size_t iteration = 0;
  std::size_t host_facts = 0;
  std::size_t guest_facts = 0;
  std::size_t edges = 0;
  std::size_t bridge_graphs = 0;
  std::size_t injections = 0;
  std::size_t pending = 0;
  bool graph_changed = false;
  bool facts_changed = false;
};

struct ModularAnalysisResult {
  ModularAnalysisResult(PreAnalysis h, PreAnalysis g)
      : host(std::move(h)), guest(std::move(g)) {}

  const ProgramIndex& index() const { return host.index(); }
  const AnalysisConfig& config() const { return host.config(); }
  const PreAnalysis& module(ModuleId id) const {
    return id == ModuleId::Host ? host : guest;
  }

  PreAnalysis host;
  PreAnalysis guest;
  bool specialized = true;
  InterlangResult interlang;
  BridgeOrder order;
  std::map<MethodId, Specialization> summaries;  // by bridge root
  std::vector<IterationStats> iterations;
  std::size_t iteration_bound = 0;
  std::size_t monotonicity_violations = 0;
};

/// Alternates call-graph construction, summary specialization and injection
/// until neither analysis nor the interlanguage call graph changes. Bridge
/// callgraphs are processed in topological order of their roots; cyclic
/// groups are repeated until stable. Throws InvariantViolation when the
/// iteration cap is exceeded or a points-to set shrinks.
ModularAnalysisResult run_fixpoint(PreAnalysis host, PreAnalysis guest,
                                   const FixpointOptions& opts = {});

/// Pre-analyses from the host entrypoints and the eval targets, followed by
/// run_fixpoint.
ModularAnalysisResult analyze_program(const ProgramIndex& index,
                                      const AnalysisConfig& cfg,
                                      const FixpointOptions& opts = {});

/// |AP| * |H| * |Ctxt| over the final result, each factor at least 1.
std::size_t iteration_bound(const ModularAnalysisResult& result);

}  // namespace polypta
