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

#include "polypta/fixpoint.h"

#include <algorithm>

namespace polypta {

namespace {

using Snapshot = std::map<Location, HeapSet>;

std::size_t count_shrinks(const Snapshot& before, const Snapshot& after) {
  std::size_t bad = 0;
  for (const auto& [loc, pts] : before) {
    auto it = after.find(loc);
    if (it == after.end()) {
      if (!pts.empty()) ++bad;
      continue;
    }
    if (!std::includes(it->second.begin(), it->second.end(), pts.begin(),
                       pts.end())) {
      ++bad;
    }
  }
  return bad;
}

void reach_eval_targets(const PreAnalysis& host, PreAnalysis& guest) {
  for (const Entrypoint& e : eval_entrypoints(host)) {
    guest.add_reachable(e.method, *e.ctx);
  }
  guest.solve();
}

// Guest-side names of interface variables see every host binding.
void bind_interface_vars(const PreAnalysis& host, PreAnalysis& guest) {
  const ProgramIndex& index = host.index();
  for (const InterfaceVar& iv : index.interface_vars()) {
    auto m = index.find_method(ModuleId::Host, iv.method);
    if (!m) continue;
    guest.add_location_facts(VarKey{kGlobalScope, iv.var, Context{}},
                             host.points_to_collapsed(*m, iv.var));
  }
}

// x = eval("f()") receives f's return set under the eval-site context.
void bind_eval_returns(PreAnalysis& host, const PreAnalysis& guest) {
  const ProgramIndex& index = host.index();
  const std::set<CallNode> nodes = host.call_graph().nodes;
  for (const CallNode& n : nodes) {
    for (const Stmt* s : index.method(n.method).stmts) {
      const auto* e = std::get_if<EvalStmt>(&s->node);
      if (e == nullptr || !e->target) continue;
      auto g = index.find_top_level(ModuleId::Guest, e->guest_method);
      if (!g) continue;
      Context callee = n.ctx.push(s->id, host.config().k);
      host.add_var_facts(n.method, *e->target, n.ctx,
                         guest.points_to(*g, kReturnVar, callee));
    }
  }
}

// Both modules observe one heap: field cells are copied across.
void sync_heap(PreAnalysis& host, PreAnalysis& guest) {
  for (const auto& [key, pts] : host.fld_points_to()) {
    if (!pts.empty()) guest.add_field_facts(key, pts);
  }
  for (const auto& [key, pts] : guest.fld_points_to()) {
    if (!pts.empty()) host.add_field_facts(key, pts);
  }
}

std::size_t process_bridge(const BridgeCallGraph& b, PreAnalysis& host,
                           PreAnalysis& guest, ModularAnalysisResult& result,
                           IterationStats& stats) {
  const std::set<Context> roots = host.contexts_of(b.root);
  if (roots.empty()) return 0;
  // Bridged methods are analyzed under the context of the bridge root, with
  // the receiver bound to the interface variable.
  for (const Context& ctx : roots) {
    for (const BridgeCallEdge& e : b.edges) {
      host.add_reachable(e.to, ctx);
      host.add_var_facts(e.to, kThisVar, ctx,
                         host.points_to(b.root, e.via, ctx));
    }
  }
  host.solve();

  Specialization spec = specialize_summary(b, host, guest);
  std::size_t injected = 0;
  for (const auto& [fn, summary] : spec.unified) {
    InjectionTarget target{fn, Context{}, {}};
    for (const BridgeInvocation& inv : b.invocations) {
      if (fn.via && inv.bridged == fn.method && inv.via == *fn.via) {
        target.callers.push_back(inv);
      }
    }
    for (const Context& ctx : roots) {
      target.ctx = ctx;
      Projection r = project(fn.method, ctx, host);
      InjectionOutcome out = inject_summary(r, host, guest, summary, target);
      stats.pending += out.pending;
      ++injected;
    }
  }
  result.summaries[b.root] = std::move(spec);
  return injected;
}

}  // namespace

ModularAnalysisResult run_fixpoint(PreAnalysis host, PreAnalysis guest,
                                   const FixpointOptions& opts) {
  ModularAnalysisResult result(std::move(host), std::move(guest));
  PreAnalysis& h = result.host;
  PreAnalysis& g = result.guest;
  result.specialized = opts.specialize;
  result.interlang = build_interlanguage_cg(h, g);
  result.order = bridge_order(result.interlang.graph, result.interlang.bridges);

  if (!opts.specialize) {
    IterationStats s;
    s.iteration = 1;
    s.host_facts = h.fact_count();
    s.guest_facts = g.fact_count();
    s.edges = result.interlang.graph.edges.size();
    s.bridge_graphs = result.interlang.bridges.size();
    result.iterations.push_back(s);
    result.iteration_bound = iteration_bound(result);
    return result;
  }

  Snapshot prev_host = h.snapshot();
  Snapshot prev_guest = g.snapshot();
  for (std::size_t iter = 1;; ++iter) {
    if (iter > opts.iteration_cap) {
      throw InvariantViolation("fixpoint did not converge within " +
                               std::to_string(opts.iteration_cap) +
                               " iterations");
    }
    IterationStats stats;
    stats.iteration = iter;
    const std::size_t facts_before = h.fact_count() + g.fact_count();
    const InterlangResult prev_graph = result.interlang;

    reach_eval_targets(h, g);
    result.interlang = build_interlanguage_cg(h, g);
    result.order =
        bridge_order(result.interlang.graph, result.interlang.bridges);

    for (const auto& unit : result.order.units) {
      for (std::size_t round = 0;; ++round) {
        if (round > opts.iteration_cap) {
          throw InvariantViolation("bridge component did not stabilize");
        }
        const std::size_t unit_before = h.fact_count() + g.fact_count();
        for (std::size_t bi : unit) {
          stats.injections += process_bridge(result.interlang.bridges[bi], h,
                                             g, result, stats);
        }
        if (h.fact_count() + g.fact_count() == unit_before) break;
      }
    }

    bind_interface_vars(h, g);
    bind_eval_returns(h, g);
    sync_heap(h, g);
    h.solve();
    g.solve();
    reach_eval_targets(h, g);

    Snapshot cur_host = h.snapshot();
    Snapshot cur_guest = g.snapshot();
    std::size_t shrinks = count_shrinks(prev_host, cur_host) +
                          count_shrinks(prev_guest, cur_guest);
    for (const CgEdge& e : prev_graph.graph.edges) {
      if (!result.interlang.graph.edges.count(e)) ++shrinks;
    }
    result.monotonicity_violations += shrinks;
    prev_host = std::move(cur_host);
    prev_guest = std::move(cur_guest);

    stats.host_facts = h.fact_count();
    stats.guest_facts = g.fact_count();
    stats.edges = result.interlang.graph.edges.size();
    stats.bridge_graphs = result.interlang.bridges.size();
    // Context nodes of bridged methods follow from the points-to facts, so
    // only method nodes, edges and bridge graphs decide convergence.
    stats.graph_changed =
        result.interlang.graph.nodes != prev_graph.graph.nodes ||
        result.interlang.graph.edges != prev_graph.graph.edges ||
        result.interlang.bridges != prev_graph.bridges;
    stats.facts_changed = h.fact_count() + g.fact_count() != facts_before;
    result.iterations.push_back(stats);

    if (shrinks != 0) {
      throw InvariantViolation("points-to information shrank in iteration " +
                               std::to_string(iter));
    }
    if (!stats.graph_changed && !stats.facts_changed) break;
  }

  result.iteration_bound = iteration_bound(result);
  if (result.iterations.size() > result.iteration_bound) {
    throw InvariantViolation("iteration count exceeds the analytic bound");
  }
  return result;
}

ModularAnalysisResult analyze_program(const ProgramIndex& index,
                                      const AnalysisConfig& cfg,
                                      const FixpointOptions& opts) {
  PreAnalysis host =
      analyze_module(index, ModuleId::Host, host_entrypoints(index), cfg);
  PreAnalysis guest =
      analyze_module(index, ModuleId::Guest, eval_entrypoints(host), cfg);
  return run_fixpoint(std::move(host), std::move(guest), opts);
}

std::size_t iteration_bound(const ModularAnalysisResult& result) {
  std::set<Location> paths;
  std::set<HeapObject> heap;
  std::set<Context> contexts;
  for (const PreAnalysis* pa : {&result.host, &result.guest}) {
    for (const auto& [loc, pts] : pa->snapshot()) {
      paths.insert(loc);
      heap.insert(pts.begin(), pts.end());
    }
    for (const CallNode& n : pa->call_graph().nodes) contexts.insert(n.ctx);
  }
  auto at_least_one = [](std::size_t n) { return n == 0 ? std::size_t{1} : n; };
  return at_least_one(paths.size()) * at_least_one(heap.size()) *
         at_least_one(contexts.size());
}

}  // namespace polypta
