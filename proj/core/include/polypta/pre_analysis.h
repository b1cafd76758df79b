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

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polypta/context.h"
#include "polypta/program_index.h"

namespace polypta {

struct VarKey {
  MethodId method = 0;  // kGlobalScope for interface variables seen by guest
  std::string var;
  Context ctx;

  auto operator<=>(const VarKey&) const = default;
  bool operator==(const VarKey&) const = default;
};

/// Key of a field cell. Which parts are populated depends on the field mode:
/// sensitive keys (object, field), field-based keys (field) and
/// field-insensitive keys (object).
struct FieldKey {
  std::optional<HeapObject> object;
  std::string field;

  auto operator<=>(const FieldKey&) const = default;
  bool operator==(const FieldKey&) const = default;
};

FieldKey field_key(FieldMode mode, const HeapObject& object,
                   const std::string& field);

using Location = std::variant<VarKey, FieldKey>;
using VarPointsTo = std::map<VarKey, HeapSet>;
using FldPointsTo = std::map<FieldKey, HeapSet>;

struct CallNode {
  MethodId method = 0;
  Context ctx;

  auto operator<=>(const CallNode&) const = default;
  bool operator==(const CallNode&) const = default;
};

struct IntraCallGraph {
  std::set<CallNode> nodes;
  std::set<std::pair<CallNode, CallNode>> edges;
};

struct Entrypoint {
  MethodId method = 0;
  std::optional<Context> ctx;  // defaults to the method's entry context
};

/// Inclusion-based points-to analysis of one language module with an
/// on-the-fly call graph. `eval` results and calls on objects of the other
/// module contribute nothing. Facts can be added after construction; solve()
/// re-closes incrementally from the changed locations.
class PreAnalysis {
 public:
  PreAnalysis(const ProgramIndex& index, ModuleId module, AnalysisConfig cfg);

  ModuleId module() const { return module_; }
  const AnalysisConfig& config() const { return cfg_; }
  const ProgramIndex& index() const { return *index_; }

  /// [entry-site] when k >= 1, the empty context otherwise.
  Context entry_context(MethodId method) const;

  bool add_reachable(MethodId method, const Context& ctx);
  bool add_var_facts(MethodId method, const std::string& var,
                     const Context& ctx, const HeapSet& heap);
  bool add_field_facts(const FieldKey& key, const HeapSet& heap);
  bool add_location_facts(const Location& loc, const HeapSet& heap);
  void solve();

  /// Resolves `var` in `method` (interface variables in guest methods map to
  /// the shared kGlobalScope key).
  VarKey var_key(MethodId method, std::string_view var,
                 const Context& ctx) const;

  HeapSet points_to(MethodId method, std::string_view var,
                    const Context& ctx) const;
  HeapSet points_to_collapsed(MethodId method, std::string_view var) const;
  HeapSet points_to(const Location& loc) const;

  VarPointsTo var_points_to() const;
  FldPointsTo fld_points_to() const;
  std::map<Location, HeapSet> snapshot() const;

  std::set<Context> contexts_of(MethodId method) const;
  bool is_reachable(MethodId method, const Context& ctx) const;
  const IntraCallGraph& call_graph() const { return cg_; }

  /// Number of (location, object) facts, reachable nodes and call edges.
  /// Strictly grows whenever the analysis learns something.
  std::size_t fact_count() const { return facts_; }
  std::size_t foreign_dispatch_count() const { return foreign_; }

  /// Locations reachable from `seeds` through copy edges and through the
  /// base/receiver dependencies of loads, stores and calls.
  std::set<Location> dependents(const std::vector<Location>& seeds) const;

 private:
  using NodeId = std::uint32_t;

  struct FieldUse {
    std::string field;
    NodeId other;  // load target or store source
  };

  struct Node {
    HeapSet pts;
    HeapSet delta;
    std::set<NodeId> succ;
    std::set<NodeId> deps;
    std::vector<FieldUse> loads;
    std::vector<FieldUse> stores;
    std::vector<std::size_t> calls;
    bool queued = false;
  };

  struct CallUse {
    CallNode caller;
    StmtId site;
    std::string method;
    NodeId receiver;
    std::vector<NodeId> args;
    std::optional<NodeId> target;
  };

  NodeId var_node(MethodId method, std::string_view var, const Context& ctx);
  NodeId field_node(const FieldKey& key);
  NodeId node_for(const Location& loc);
  std::optional<NodeId> find_node(const Location& loc) const;

  void add_pts(NodeId node, const HeapSet& heap);
  void add_edge(NodeId from, NodeId to);
  void add_dep(NodeId from, NodeId to);
  bool reach(MethodId method, const Context& ctx);
  void generate(const CallNode& node, const Stmt& stmt);
  void apply_load(NodeId base, const FieldUse& use, const HeapSet& objs);
  void apply_store(NodeId base, const FieldUse& use, const HeapSet& objs);
  void dispatch(std::size_t call, const HeapObject& receiver);
  void bind_call(const CallNode& caller, MethodId callee,
                 const Context& callee_ctx, const std::vector<NodeId>& args,
                 std::optional<NodeId> target);

  const ProgramIndex* index_;
  ModuleId module_;
  AnalysisConfig cfg_;

  std::vector<Node> nodes_;
  std::vector<Location> node_loc_;
  std::map<VarKey, NodeId> var_nodes_;
  std::map<FieldKey, NodeId> field_nodes_;
  std::vector<CallUse> calls_;
  std::deque<NodeId> worklist_;

  IntraCallGraph cg_;
  std::map<MethodId, std::set<Context>> contexts_;
  std::optional<NodeId> cause_;
  std::size_t facts_ = 0;
  std::size_t foreign_ = 0;
};

/// Runs the module analysis from `entries` to a fixpoint.
/// Throws std::invalid_argument for entrypoints outside the module.
PreAnalysis analyze_module(const ProgramIndex& index, ModuleId module,
                           const std::vector<Entrypoint>& entries,
                           const AnalysisConfig& cfg);

/// Same, with entrypoints given by method name.
PreAnalysis analyze_module(const ProgramIndex& index, ModuleId module,
                           const std::vector<std::string>& entries,
                           const AnalysisConfig& cfg);

/// Every top-level host method, in its entry context.
std::vector<Entrypoint> host_entrypoints(const ProgramIndex& index);

/// Guest methods targeted by `eval` in reachable host methods; each eval site
/// becomes the last element of the guest method's calling context.
std::vector<Entrypoint> eval_entrypoints(const PreAnalysis& host);

/// Variables of `scope` whose (context-collapsed) points-to sets intersect
/// that of `var`, plus `var` and the variables connected to it by copy
/// assignments in `scope`. The copy closure keeps interface variables, whose
/// guest-side points-to set is empty before injection, aliased by name.
/// Throws std::invalid_argument when `var` is not visible in `scope`.
std::set<std::string> may_alias(const PreAnalysis& pa, std::string_view var,
                                MethodId scope);

/// All contexts under which the definition of `var` at `locus` is reached.
std::vector<Context> call_contexts(const PreAnalysis& pa, StmtId locus,
                                   std::string_view var);

/// The (least) context under which the definition at `locus` was reached; the
/// empty context when k = 0. Throws std::invalid_argument when `locus` is not
/// a New or Invoke statement defining `var`, or is unreachable.
Context call_context(const PreAnalysis& pa, StmtId locus,
                     std::string_view var);

}  // namespace polypta
