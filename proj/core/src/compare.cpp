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

#include "polypta/compare.h"

#include <algorithm>
#include <iterator>

namespace polypta {

std::string scope_label(const ProgramIndex& index, MethodId method) {
  if (method == kGlobalScope) return "guest::<iface>";
  return index.method_label(method);
}

CollapsedPointsTo collapse(const ProgramIndex& index, const VarPointsTo& pts) {
  CollapsedPointsTo out;
  for (const auto& [key, heap] : pts) {
    if (heap.empty()) continue;
    auto& sites = out[{scope_label(index, key.method), key.var}];
    for (const HeapObject& h : heap) sites.insert(h.site);
  }
  return out;
}

CollapsedPointsTo collapse(const ModularAnalysisResult& result) {
  CollapsedPointsTo out = collapse(result.index(), result.host.var_points_to());
  for (auto& [key, sites] : collapse(result.index(), result.guest.var_points_to())) {
    out[key].insert(sites.begin(), sites.end());
  }
  return out;
}

CollapsedPointsTo collapse(const ProgramIndex& index,
                           const ObservedFacts& facts) {
  CollapsedPointsTo out;
  for (const ObservedBinding& b : facts.bindings) {
    out[{scope_label(index, b.method), b.var}].insert(b.site);
  }
  return out;
}

std::vector<UncoveredFact> uncovered(const CollapsedPointsTo& observed,
                                     const CollapsedPointsTo& computed) {
  std::vector<UncoveredFact> out;
  for (const auto& [key, sites] : observed) {
    auto it = computed.find(key);
    for (StmtId s : sites) {
      if (it == computed.end() || !it->second.count(s)) {
        out.push_back(UncoveredFact{key, s});
      }
    }
  }
  return out;
}

std::vector<PointsToDelta> diff(const CollapsedPointsTo& left,
                                const CollapsedPointsTo& right) {
  std::set<CollapsedKey> keys;
  for (const auto& [k, v] : left) keys.insert(k);
  for (const auto& [k, v] : right) keys.insert(k);
  static const std::set<StmtId> kEmpty;
  std::vector<PointsToDelta> out;
  for (const CollapsedKey& k : keys) {
    auto l = left.find(k);
    auto r = right.find(k);
    const auto& ls = l == left.end() ? kEmpty : l->second;
    const auto& rs = r == right.end() ? kEmpty : r->second;
    if (ls == rs) continue;
    PointsToDelta d{k, {}, {}};
    std::set_difference(ls.begin(), ls.end(), rs.begin(), rs.end(),
                        std::inserter(d.only_left, d.only_left.end()));
    std::set_difference(rs.begin(), rs.end(), ls.begin(), ls.end(),
                        std::inserter(d.only_right, d.only_right.end()));
    out.push_back(std::move(d));
  }
  return out;
}

bool includes(const CollapsedPointsTo& big, const CollapsedPointsTo& small) {
  for (const auto& [key, sites] : small) {
    auto it = big.find(key);
    if (it == big.end()) return false;
    if (!std::includes(it->second.begin(), it->second.end(), sites.begin(),
                       sites.end())) {
      return false;
    }
  }
  return true;
}

std::size_t fact_count(const CollapsedPointsTo& pts) {
  std::size_t n = 0;
  for (const auto& [key, sites] : pts) n += sites.size();
  return n;
}

ProgramComparison compare_program(const ProgramIndex& index,
                                  const AnalysisConfig& cfg,
                                  const FixpointOptions& opts) {
  ProgramComparison out;
  ModularAnalysisResult modular = analyze_program(index, cfg, opts);
  ObservedFacts facts = interpret(index);
  MonolithicResult mono = monolithic_andersen(index, cfg);

  CollapsedPointsTo observed = collapse(index, facts);
  CollapsedPointsTo mod = collapse(modular);
  CollapsedPointsTo base = collapse(index, mono.vars);
  out.observed_facts = fact_count(observed);
  out.uncovered = uncovered(observed, mod);
  out.mono_uncovered = uncovered(observed, base);
  out.deltas = diff(mod, base);
  out.iterations = modular.iterations.size();
  out.iteration_bound = modular.iteration_bound;
  out.monotonicity_violations = modular.monotonicity_violations;
  out.budget_exhausted = facts.budget_exhausted;
  return out;
}

CorpusComparison compare_corpus(const std::vector<Program>& programs,
                                const AnalysisConfig& cfg,
                                const FixpointOptions& opts) {
  CorpusComparison out;
  for (std::size_t i = 0; i < programs.size(); ++i) {
    ProgramIndex index(programs[i]);
    ProgramComparison c = compare_program(index, cfg, opts);
    ++out.programs;
    out.observed_facts += c.observed_facts;
    out.uncovered_facts += c.uncovered.size();
    if (c.uncovered.empty()) {
      ++out.sound_programs;
    } else {
      out.notes.push_back("program " + std::to_string(i) + ": " +
                          std::to_string(c.uncovered.size()) +
                          " uncovered facts");
    }
    bool extra = false;
    bool missing = false;
    for (const PointsToDelta& d : c.deltas) {
      out.extra_facts += d.only_left.size();
      extra = extra || !d.only_left.empty();
      missing = missing || !d.only_right.empty();
    }
    if (c.deltas.empty()) ++out.equal_to_monolithic;
    if (extra) {
      ++out.precision_loss_programs;
      out.notes.push_back("program " + std::to_string(i) +
                          ": modular result less precise than monolithic");
    }
    if (missing) ++out.missing_vs_monolithic;
  }
  return out;
}

}  // namespace polypta
