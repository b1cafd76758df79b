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

#include "polypta/report.h"

#include <sstream>

namespace polypta {

using nlohmann::json;

namespace {

json object_json(const HeapObject& h, const ProgramIndex& index) {
  return json{{"label", index.alloc_label(h.site)},
              {"context", index.context_label(h.ctx)}};
}

json heap_json(const HeapSet& heap, const ProgramIndex& index) {
  std::set<std::string> labels;
  json objects = json::array();
  for (const HeapObject& h : heap) {
    labels.insert(index.alloc_label(h.site));
    objects.push_back(object_json(h, index));
  }
  return json{{"heap", labels}, {"objects", objects}};
}

json summary_json(const FunctionSummary& summary) {
  json entries = json::array();
  for (const auto& [ap, val] : summary) {
    json e{{"path", ap.to_string()}, {"interface", ap.base.iface}};
    if (val) {
      e["resolved"] = true;
      e["heap_sites"] = json::array();
      for (const HeapObject& h : *val) e["heap_sites"].push_back(h.site);
    } else {
      e["resolved"] = false;
    }
    entries.push_back(e);
  }
  return entries;
}

}  // namespace

json result_to_json(const ModularAnalysisResult& result) {
  const ProgramIndex& index = result.index();
  json out;
  out["schema"] = kResultSchema;
  out["config"] = {{"k", result.config().k},
                   {"field_mode", field_mode_name(result.config().field_mode)},
                   {"specialized", result.specialized}};

  json vars = json::array();
  for (const PreAnalysis* pa : {&result.host, &result.guest}) {
    for (const auto& [key, heap] : pa->var_points_to()) {
      json e{{"module", module_name(pa->module())},
             {"method", key.method == kGlobalScope
                            ? std::string("<iface>")
                            : index.method(key.method).qualified},
             {"var", key.var},
             {"context", index.context_label(key.ctx)}};
      e.update(heap_json(heap, index));
      vars.push_back(e);
    }
  }
  out["var_points_to"] = vars;

  json fields = json::array();
  for (const PreAnalysis* pa : {&result.host, &result.guest}) {
    for (const auto& [key, heap] : pa->fld_points_to()) {
      json e{{"module", module_name(pa->module())},
             {"object", key.object ? object_json(*key.object, index) : json()},
             {"field", key.field}};
      e.update(heap_json(heap, index));
      fields.push_back(e);
    }
  }
  out["field_points_to"] = fields;

  json nodes = json::array();
  for (MethodId m : result.interlang.graph.nodes) {
    nodes.push_back(index.method_label(m));
  }
  json edges = json::array();
  for (const CgEdge& e : result.interlang.graph.edges) {
    edges.push_back({{"from", index.method_label(e.from)},
                     {"to", index.method_label(e.to)},
                     {"kind", edge_kind_name(e.kind)}});
  }
  out["interlanguage"] = {{"nodes", nodes}, {"edges", edges}};

  json bridges = json::array();
  for (const BridgeCallGraph& b : result.interlang.bridges) {
    json be = json::array();
    for (const BridgeCallEdge& e : b.edges) {
      be.push_back({{"from", index.method_label(e.from)},
                    {"to", index.method_label(e.to)},
                    {"via", e.via}});
    }
    json bn = json::array();
    for (MethodId m : b.nodes) bn.push_back(index.method_label(m));
    json summaries = json::array();
    if (auto it = result.summaries.find(b.root); it != result.summaries.end()) {
      for (const auto& [fn, summary] : it->second.unified) {
        summaries.push_back({{"method", index.method_label(fn.method)},
                             {"via", fn.via ? json(*fn.via) : json()},
                             {"entries", summary_json(summary)}});
      }
    }
    bridges.push_back({{"root", index.method_label(b.root)},
                       {"nodes", bn},
                       {"edges", be},
                       {"summaries", summaries}});
  }
  out["bridge_graphs"] = bridges;
  out["iterations"] = result.iterations.size();
  out["iteration_bound"] = result.iteration_bound;
  return out;
}

json stats_to_json(const ModularAnalysisResult& result, double millis) {
  json its = json::array();
  for (const IterationStats& s : result.iterations) {
    its.push_back({{"iteration", s.iteration},
                   {"host_facts", s.host_facts},
                   {"guest_facts", s.guest_facts},
                   {"edges", s.edges},
                   {"bridge_graphs", s.bridge_graphs},
                   {"injections", s.injections},
                   {"pending", s.pending},
                   {"graph_changed", s.graph_changed},
                   {"facts_changed", s.facts_changed}});
  }
  json out{{"schema", kStatsSchema},
           {"iterations", its},
           {"iteration_bound", result.iteration_bound},
           {"monotonicity_violations", result.monotonicity_violations}};
  if (millis >= 0) out["millis"] = millis;
  return out;
}

json leaks_to_json(const std::vector<LeakReport>& leaks,
                   const ProgramIndex& index) {
  json arr = json::array();
  for (const LeakReport& l : leaks) {
    arr.push_back({{"sink_site", l.sink_site},
                   {"sink_method", index.method_label(l.sink_method)},
                   {"callee", l.callee},
                   {"arg", l.arg},
                   {"arg_var", l.arg_var},
                   {"witness", object_json(l.witness, index)},
                   {"source_site", l.source_site},
                   {"source", index.site_label(l.source_site)}});
  }
  return json{{"schema", kLeakSchema}, {"leaks", arr}};
}

json comparison_to_json(const CorpusComparison& cmp, const AnalysisConfig& cfg) {
  return json{{"schema", kCompareSchema},
              {"k", cfg.k},
              {"field_mode", field_mode_name(cfg.field_mode)},
              {"programs", cmp.programs},
              {"sound_programs", cmp.sound_programs},
              {"pass_rate", cmp.pass_rate()},
              {"observed_facts", cmp.observed_facts},
              {"uncovered_facts", cmp.uncovered_facts},
              {"equal_to_monolithic", cmp.equal_to_monolithic},
              {"precision_loss_programs", cmp.precision_loss_programs},
              {"missing_vs_monolithic", cmp.missing_vs_monolithic},
              {"extra_facts", cmp.extra_facts},
              {"notes", cmp.notes}};
}

std::string facts_to_jsonl(const ObservedFacts& facts,
                           const ProgramIndex& index) {
  std::ostringstream out;
  for (const ObservedBinding& b : facts.bindings) {
    out << json{{"method", index.method_label(b.method)},
                {"var", b.var},
                {"object", b.object},
                {"site", index.alloc_label(b.site)}}
               .dump()
        << "\n";
  }
  for (const auto& [caller, callee] : facts.trace) {
    out << json{{"caller", index.method_label(caller)},
                {"callee", index.method_label(callee)}}
               .dump()
        << "\n";
  }
  return out.str();
}

std::string interlang_to_dot(const InterlangCallGraph& graph,
                             const ProgramIndex& index) {
  std::ostringstream out;
  out << "digraph interlanguage {\n";
  for (MethodId m : graph.nodes) {
    out << "  \"" << index.method_label(m) << "\";\n";
  }
  for (const CgEdge& e : graph.edges) {
    out << "  \"" << index.method_label(e.from) << "\" -> \""
        << index.method_label(e.to) << "\" [kind=\"" << edge_kind_name(e.kind)
        << "\", label=\"" << edge_kind_name(e.kind) << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace polypta
