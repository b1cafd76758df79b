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
#include <string>
#include <utility>
#include <vector>

#include "polypta/pre_analysis.h"

namespace polypta {

enum class EdgeKind { Intra, Eval, GuestToBridge, Bridge };

const char* edge_kind_name(EdgeKind kind);

struct CgEdge {
  MethodId from = 0;
  MethodId to = 0;
  EdgeKind kind = EdgeKind::Intra;

  auto operator<=>(const CgEdge&) const = default;
  bool operator==(const CgEdge&) const = default;
};

struct InterlangCallGraph {
  std::set<MethodId> nodes;
  std::set<CallNode> context_nodes;  // (method, context) pairs of both modules
  std::set<CgEdge> edges;

  std::set<CgEdge> edges_of(EdgeKind kind) const;
  bool operator==(const InterlangCallGraph&) const = default;
};

struct BridgeCallEdge {
  MethodId from = 0;  // host method declaring `via`
  MethodId to = 0;    // bridged method
  std::string via;

  auto operator<=>(const BridgeCallEdge&) const = default;
  bool operator==(const BridgeCallEdge&) const = default;
};

/// A guest call `x.m(...)` that reaches bridged method `bridged` through
/// interface variable `via`.
struct BridgeInvocation {
  MethodId guest_method = 0;
  StmtId site = kNoStmt;
  std::string via;
  MethodId bridged = 0;

  auto operator<=>(const BridgeInvocation&) const = default;
  bool operator==(const BridgeInvocation&) const = default;
};

struct BridgeCallGraph {
  MethodId root = 0;
  std::set<MethodId> nodes;
  std::set<BridgeCallEdge> edges;
  std::set<BridgeInvocation> invocations;

  bool operator==(const BridgeCallGraph&) const = default;
};

struct Discovery {
  std::set<CgEdge> edges;
  std::set<BridgeCallEdge> bridge_edges;
  std::set<BridgeInvocation> invocations;
};

using DiscoveryVisited = std::set<std::pair<std::string, MethodId>>;

/// Finds invocations of `iface`'s bridge-class methods in guest method `m_g`
/// on aliases of `var` (which is `iface` itself or a formal that received an
/// alias), then follows guest callees. Each (variable, method) pair is
/// explored at most once.
void discover_bridge_calls(const std::string& var, const std::string& iface,
                           MethodId m_h, MethodId m_g, const PreAnalysis& guest,
                           Discovery& out, DiscoveryVisited& visited);

Discovery discover_bridge_calls(const std::string& iface, MethodId m_h,
                                MethodId m_g, const PreAnalysis& guest);

struct InterlangResult {
  InterlangCallGraph graph;
  std::vector<BridgeCallGraph> bridges;  // sorted by root
};

InterlangResult build_interlanguage_cg(const PreAnalysis& host,
                                       const PreAnalysis& guest);

/// Bridge callgraphs grouped into strongly connected components of the root
/// reachability relation in `graph`, in topological order. Each unit holds
/// indices into `bridges`.
struct BridgeOrder {
  std::vector<std::vector<std::size_t>> units;
};

BridgeOrder bridge_order(const InterlangCallGraph& graph,
                         const std::vector<BridgeCallGraph>& bridges);

}  // namespace polypta
