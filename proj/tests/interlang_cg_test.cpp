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

#include <gtest/gtest.h>

#include "test_support.h"

namespace polypta {
namespace {

using testing::load_data;
using testing::load_text;
using testing::method_id;
using testing::running_example;

constexpr AnalysisConfig kDefault{1, FieldMode::Sensitive};

using NamedEdge = std::tuple<std::string, std::string, EdgeKind>;

std::set<NamedEdge> named(const ProgramIndex& index,
                          const std::set<CgEdge>& edges) {
  std::set<NamedEdge> out;
  for (const CgEdge& e : edges) {
    out.insert({index.method_label(e.from), index.method_label(e.to), e.kind});
  }
  return out;
}

std::set<std::pair<std::string, std::string>> named(
    const ProgramIndex& index, const std::set<BridgeCallEdge>& edges) {
  std::set<std::pair<std::string, std::string>> out;
  for (const BridgeCallEdge& e : edges) {
    out.insert({index.method_label(e.from), index.method_label(e.to)});
  }
  return out;
}

struct PreAnalyses {
  PreAnalysis host;
  PreAnalysis guest;
};

PreAnalyses pre_analyses(const ProgramIndex& index) {
  PreAnalysis host = analyze_module(index, ModuleId::Host,
                                    host_entrypoints(index), kDefault);
  PreAnalysis guest = analyze_module(index, ModuleId::Guest,
                                     eval_entrypoints(host), kDefault);
  return {std::move(host), std::move(guest)};
}

TEST(InterlangCg, RunningExampleEdges) {
  auto p = running_example();
  auto [host, guest] = pre_analyses(*p.index);
  InterlangResult r = build_interlanguage_cg(host, guest);
  std::set<NamedEdge> expected{
      {"host::foo", "guest::set", EdgeKind::Eval},
      {"host::foo", "guest::getAndLeak", EdgeKind::Eval},
      {"guest::set", "host::setSecret", EdgeKind::GuestToBridge},
      {"guest::getAndLeak", "host::getSecret", EdgeKind::GuestToBridge},
      {"guest::getAndLeak", "guest::leak", EdgeKind::Intra},
      {"host::foo", "host::setSecret", EdgeKind::Bridge},
      {"host::foo", "host::getSecret", EdgeKind::Bridge},
  };
  EXPECT_EQ(named(*p.index, r.graph.edges), expected);
  ASSERT_EQ(r.bridges.size(), 1u);
  EXPECT_EQ(p.index->method_label(r.bridges[0].root), "host::foo");
  EXPECT_EQ(named(*p.index, r.bridges[0].edges),
            (std::set<std::pair<std::string, std::string>>{
                {"host::foo", "host::setSecret"},
                {"host::foo", "host::getSecret"}}));
  EXPECT_EQ(r.bridges[0].nodes.size(), 3u);
}

TEST(InterlangCg, NoEvalMeansNoBridges) {
  auto p = load_text(R"poly(HOST {
    main() { a = new A(); a.run(); }
    class A { run() { } }
    class Shared { serve() { } }
  } GUEST {
    g() { h(); }
    h() { }
  })poly");
  auto [host, guest] = pre_analyses(*p.index);
  InterlangResult r = build_interlanguage_cg(host, guest);
  EXPECT_TRUE(r.bridges.empty());
  EXPECT_TRUE(r.graph.edges_of(EdgeKind::Eval).empty());
  EXPECT_TRUE(r.graph.edges_of(EdgeKind::Bridge).empty());
  std::set<std::string> nodes;
  for (MethodId m : r.graph.nodes) nodes.insert(p.index->method_label(m));
  EXPECT_EQ(nodes, (std::set<std::string>{"host::main", "host::run"}));
}

TEST(InterlangCg, BridgeClassNodesWithoutEval) {
  auto p = load_text(R"poly(HOST {
    main() { iface i = new Shared(); }
    class Shared { serve() { } }
  } GUEST {})poly");
  auto [host, guest] = pre_analyses(*p.index);
  InterlangResult r = build_interlanguage_cg(host, guest);
  EXPECT_TRUE(r.bridges.empty());
  EXPECT_TRUE(
      r.graph.nodes.count(method_id(*p.index, ModuleId::Host, "serve")));
}

// Every guest statement `x.m(...)` where `x` is an interface variable of the
// root, enumerated directly from the program text.
std::set<std::pair<std::string, std::string>> enumerate_bridge_edges(
    const ProgramIndex& index) {
  std::set<std::pair<std::string, std::string>> out;
  for (MethodId g : index.methods_of(ModuleId::Guest)) {
    for (const Stmt* s : index.method(g).stmts) {
      const auto* call = std::get_if<InvokeStmt>(&s->node);
      if (!call || !call->receiver) continue;
      const InterfaceVar* iv = index.find_interface_var(*call->receiver);
      if (!iv) continue;
      out.insert({"host::" + iv->method, "host::" + call->method});
    }
  }
  return out;
}

TEST(InterlangCg, TwoRootsGiveDisjointBridgeGraphs) {
  auto p = load_data("curated/two_instances.poly");
  auto [host, guest] = pre_analyses(*p.index);
  InterlangResult r = build_interlanguage_cg(host, guest);
  ASSERT_EQ(r.bridges.size(), 2u);
  std::set<std::pair<std::string, std::string>> all;
  for (const BridgeCallGraph& b : r.bridges) {
    for (const auto& e : named(*p.index, b.edges)) {
      EXPECT_EQ(e.first, p.index->method_label(b.root));
      all.insert(e);
    }
  }
  EXPECT_EQ(all, enumerate_bridge_edges(*p.index));
  std::set<std::string> vias;
  for (const BridgeCallGraph& b : r.bridges) {
    for (const BridgeCallEdge& e : b.edges) vias.insert(e.via);
    EXPECT_EQ(b.edges.size(), 2u);
  }
  EXPECT_EQ(vias, (std::set<std::string>{"a", "b"}));
}

TEST(DiscoverBridgeCalls, SetInRunningExample) {
  auto p = running_example();
  auto [host, guest] = pre_analyses(*p.index);
  MethodId foo = method_id(*p.index, ModuleId::Host, "foo");
  MethodId set = method_id(*p.index, ModuleId::Guest, "set");
  Discovery d = discover_bridge_calls("i", foo, set, guest);
  EXPECT_EQ(named(*p.index, d.edges),
            (std::set<NamedEdge>{
                {"guest::set", "host::setSecret", EdgeKind::GuestToBridge}}));
  EXPECT_EQ(named(*p.index, d.bridge_edges),
            (std::set<std::pair<std::string, std::string>>{
                {"host::foo", "host::setSecret"}}));
  ASSERT_EQ(d.invocations.size(), 1u);
  EXPECT_EQ(d.invocations.begin()->via, "i");
}

TEST(DiscoverBridgeCalls, FieldReadsOnlyAddNothing) {
  auto p = load_text(R"poly(HOST {
    foo() { iface i = new Box(); eval("peek()"); }
    class Box { field item; get() { o = this.item; return o; } }
  } GUEST {
    peek() { v = i.item; }
  })poly");
  auto [host, guest] = pre_analyses(*p.index);
  Discovery d = discover_bridge_calls(
      "i", method_id(*p.index, ModuleId::Host, "foo"),
      method_id(*p.index, ModuleId::Guest, "peek"), guest);
  EXPECT_TRUE(d.edges.empty());
  EXPECT_TRUE(d.bridge_edges.empty());
}

TEST(DiscoverBridgeCalls, HelperReceivesInterfaceVariable) {
  auto p = load_data("curated/helper_forward.poly");
  auto [host, guest] = pre_analyses(*p.index);
  Discovery d = discover_bridge_calls(
      "i", method_id(*p.index, ModuleId::Host, "foo"),
      method_id(*p.index, ModuleId::Guest, "set"), guest);
  EXPECT_TRUE(named(*p.index, d.edges)
                  .count({"guest::store", "host::setSecret",
                          EdgeKind::GuestToBridge}));
  EXPECT_EQ(named(*p.index, d.bridge_edges),
            (std::set<std::pair<std::string, std::string>>{
                {"host::foo", "host::setSecret"}}));
}

TEST(BridgeOrder, ChainFollowsRootReachability) {
  auto p = load_data("curated/chain3.poly");
  auto [host, guest] = pre_analyses(*p.index);
  InterlangResult r = build_interlanguage_cg(host, guest);
  BridgeOrder order = bridge_order(r.graph, r.bridges);
  std::vector<std::string> roots;
  for (const auto& unit : order.units) {
    ASSERT_EQ(unit.size(), 1u);
    roots.push_back(p.index->method_label(r.bridges[unit[0]].root));
  }
  EXPECT_EQ(roots, (std::vector<std::string>{"host::main", "host::stage2",
                                             "host::stage3"}));
}

TEST(BridgeOrder, CycleFormsOneUnit) {
  InterlangCallGraph g;
  g.nodes = {0, 1, 2};
  g.edges = {{0, 1, EdgeKind::Intra},
             {1, 0, EdgeKind::Intra},
             {1, 2, EdgeKind::Intra}};
  std::vector<BridgeCallGraph> bridges(3);
  bridges[0].root = 2;
  bridges[1].root = 0;
  bridges[2].root = 1;
  BridgeOrder order = bridge_order(g, bridges);
  ASSERT_EQ(order.units.size(), 2u);
  std::vector<std::size_t> first = order.units[0];
  std::sort(first.begin(), first.end());
  EXPECT_EQ(first, (std::vector<std::size_t>{1, 2}));
  EXPECT_EQ(order.units[1], std::vector<std::size_t>{0});
}

}  // namespace
}  // namespace polypta
