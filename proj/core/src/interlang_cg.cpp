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

#include "polypta/interlang_cg.h"

#include <algorithm>
#include <functional>
#include <map>

namespace polypta {

const char* edge_kind_name(EdgeKind kind) {
  switch (kind) {
    case EdgeKind::Intra:
      return "intra";
    case EdgeKind::Eval:
      return "eval";
    case EdgeKind::GuestToBridge:
      return "guest-to-bridge";
    case EdgeKind::Bridge:
      return "bridge";
  }
  return "?";
}

std::set<CgEdge> InterlangCallGraph::edges_of(EdgeKind kind) const {
  std::set<CgEdge> out;
  for (const CgEdge& e : edges) {
    if (e.kind == kind) out.insert(e);
  }
  return out;
}

namespace {

std::set<MethodId> callees_of(const PreAnalysis& pa, MethodId m) {
  std::set<MethodId> out;
  for (const auto& [from, to] : pa.call_graph().edges) {
    if (from.method == m) out.insert(to.method);
  }
  return out;
}

}  // namespace

void discover_bridge_calls(const std::string& var, const std::string& iface,
                           MethodId m_h, MethodId m_g, const PreAnalysis& guest,
                           Discovery& out, DiscoveryVisited& visited) {
  if (!visited.emplace(var, m_g).second) return;
  const ProgramIndex& index = guest.index();
  const InterfaceVar* iv = index.find_interface_var(iface);
  if (iv == nullptr) return;
  const ClassInfo* cls = index.find_class(iv->cls);
  if (cls == nullptr) return;

  std::set<std::string> aliases = may_alias(guest, var, m_g);
  if (var != iface) {
    std::set<std::string> more = may_alias(guest, iface, m_g);
    aliases.insert(more.begin(), more.end());
  }

  const std::set<MethodId> callees = callees_of(guest, m_g);
  std::vector<std::pair<std::string, MethodId>> forwarded;
  for (const Stmt* s : index.method(m_g).stmts) {
    const auto* inv = std::get_if<InvokeStmt>(&s->node);
    if (inv == nullptr) continue;
    if (inv->receiver && aliases.count(*inv->receiver)) {
      auto it = cls->methods.find(inv->method);
      if (it != cls->methods.end()) {
        out.edges.insert(CgEdge{m_g, it->second, EdgeKind::GuestToBridge});
        out.bridge_edges.insert(BridgeCallEdge{m_h, it->second, iface});
        out.invocations.insert(BridgeInvocation{m_g, s->id, iface, it->second});
      }
    }
    // An alias passed as an argument makes the callee's formal an alias.
    for (MethodId c : callees) {
      const MethodInfo& callee = index.method(c);
      if (callee.decl->name != inv->method) continue;
      if (inv->receiver.has_value() != (callee.owner != nullptr)) continue;
      const auto& params = callee.decl->params;
      for (std::size_t j = 0; j < inv->args.size() && j < params.size(); ++j) {
        if (aliases.count(inv->args[j])) forwarded.emplace_back(params[j], c);
      }
    }
  }
  for (const auto& [formal, c] : forwarded) {
    discover_bridge_calls(formal, iface, m_h, c, guest, out, visited);
  }
  // Interface variables are visible by name in every guest method.
  for (MethodId c : callees) {
    discover_bridge_calls(iface, iface, m_h, c, guest, out, visited);
  }
}

Discovery discover_bridge_calls(const std::string& iface, MethodId m_h,
                                MethodId m_g, const PreAnalysis& guest) {
  Discovery out;
  DiscoveryVisited visited;
  discover_bridge_calls(iface, iface, m_h, m_g, guest, out, visited);
  return out;
}

InterlangResult build_interlanguage_cg(const PreAnalysis& host,
                                       const PreAnalysis& guest) {
  const ProgramIndex& index = host.index();
  InterlangResult result;
  InterlangCallGraph& g = result.graph;

  for (const PreAnalysis* pa : {&host, &guest}) {
    for (const CallNode& n : pa->call_graph().nodes) {
      g.nodes.insert(n.method);
      g.context_nodes.insert(n);
    }
    for (const auto& [from, to] : pa->call_graph().edges) {
      g.edges.insert(CgEdge{from.method, to.method, EdgeKind::Intra});
    }
  }
  for (MethodId m : index.bridge_methods()) g.nodes.insert(m);

  // Eval edges, one per eval statement of every host method in the graph.
  std::set<std::pair<MethodId, MethodId>> evals;
  for (const CallNode& n : host.call_graph().nodes) {
    for (const Stmt* s : index.method(n.method).stmts) {
      const auto* e = std::get_if<EvalStmt>(&s->node);
      if (e == nullptr) continue;
      auto target = index.find_top_level(ModuleId::Guest, e->guest_method);
      if (!target) continue;
      g.nodes.insert(*target);
      g.edges.insert(CgEdge{n.method, *target, EdgeKind::Eval});
      evals.emplace(n.method, *target);
    }
  }

  Discovery found;
  for (const auto& [m_e, m_g] : evals) {
    for (const InterfaceVar& iv : index.interface_vars()) {
      auto m_h = index.find_method(ModuleId::Host, iv.method);
      if (!m_h) continue;
      DiscoveryVisited visited;
      discover_bridge_calls(iv.var, iv.var, *m_h, m_g, guest, found, visited);
    }
  }
  g.edges.insert(found.edges.begin(), found.edges.end());

  std::map<MethodId, BridgeCallGraph> by_root;
  for (const BridgeCallEdge& e : found.bridge_edges) {
    g.edges.insert(CgEdge{e.from, e.to, EdgeKind::Bridge});
    BridgeCallGraph& b = by_root[e.from];
    b.root = e.from;
    b.nodes.insert(e.from);
    b.nodes.insert(e.to);
    b.edges.insert(e);
  }
  for (const BridgeInvocation& inv : found.invocations) {
    auto owner = index.find_interface_var(inv.via);
    auto root = index.find_method(ModuleId::Host, owner->method);
    by_root.at(*root).invocations.insert(inv);
  }
  for (auto& [root, b] : by_root) result.bridges.push_back(std::move(b));
  return result;
}

BridgeOrder bridge_order(const InterlangCallGraph& graph,
                         const std::vector<BridgeCallGraph>& bridges) {
  std::map<MethodId, std::set<MethodId>> succ;
  for (const CgEdge& e : graph.edges) succ[e.from].insert(e.to);

  const std::size_t n = bridges.size();
  // reach[a][b]: root b is reachable from root a.
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a) {
    std::set<MethodId> seen;
    std::vector<MethodId> stack{bridges[a].root};
    while (!stack.empty()) {
      MethodId m = stack.back();
      stack.pop_back();
      for (MethodId s : succ[m]) {
        if (seen.insert(s).second) stack.push_back(s);
      }
    }
    for (std::size_t b = 0; b < n; ++b) {
      if (b != a && seen.count(bridges[b].root)) reach[a][b] = true;
    }
  }

  // Tarjan over the root graph.
  std::vector<int> idx(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0;
  int ncomp = 0;
  std::function<void(std::size_t)> strong = [&](std::size_t v) {
    idx[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (!reach[v][w]) continue;
      if (idx[w] < 0) {
        strong(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], idx[w]);
      }
    }
    if (low[v] == idx[v]) {
      while (true) {
        std::size_t w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = ncomp;
        if (w == v) break;
      }
      ++ncomp;
    }
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (idx[v] < 0) strong(v);
  }

  std::vector<std::vector<std::size_t>> members(ncomp);
  for (std::size_t v = 0; v < n; ++v) members[comp[v]].push_back(v);
  std::vector<std::set<int>> csucc(ncomp);
  std::vector<int> indeg(ncomp, 0);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (reach[a][b] && comp[a] != comp[b] &&
          csucc[comp[a]].insert(comp[b]).second) {
        ++indeg[comp[b]];
      }
    }
  }
  // Kahn with ties broken by the smallest member index.
  auto key = [&](int c) { return members[c].front(); };
  std::set<std::pair<std::size_t, int>> ready;
  for (int c = 0; c < ncomp; ++c) {
    if (indeg[c] == 0) ready.emplace(key(c), c);
  }
  BridgeOrder order;
  while (!ready.empty()) {
    int c = ready.begin()->second;
    ready.erase(ready.begin());
    order.units.push_back(members[c]);
    for (int d : csucc[c]) {
      if (--indeg[d] == 0) ready.emplace(key(d), d);
    }
  }
  return order;
}

}  // namespace polypta
