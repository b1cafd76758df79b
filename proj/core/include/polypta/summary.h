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
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "polypta/interlang_cg.h"
#include "polypta/pre_analysis.h"

namespace polypta {

/// Root of an access path. Interface bases are shared by every function of a
/// bridge callgraph; other bases are locals of one function.
struct SummaryBase {
  std::string name;
  bool iface = false;

  auto operator<=>(const SummaryBase&) const = default;
  bool operator==(const SummaryBase&) const = default;
};

struct AccessPath {
  SummaryBase base;
  std::optional<std::string> field;

  static AccessPath local(std::string name,
                          std::optional<std::string> field = std::nullopt);
  static AccessPath interface(std::string name,
                              std::optional<std::string> field = std::nullopt);

  std::string to_string() const;

  auto operator<=>(const AccessPath&) const = default;
  bool operator==(const AccessPath&) const = default;
};

/// H ⊆ [ap]
struct MemberConstraint {
  HeapSet heap;
  AccessPath path;

  auto operator<=>(const MemberConstraint&) const = default;
  bool operator==(const MemberConstraint&) const = default;
};

/// [from] ⊆ [to]
struct SubsetConstraint {
  AccessPath from;
  AccessPath to;

  auto operator<=>(const SubsetConstraint&) const = default;
  bool operator==(const SubsetConstraint&) const = default;
};

using Constraint = std::variant<MemberConstraint, SubsetConstraint>;
using ConstraintSet = std::set<Constraint>;

/// nullopt marks an access path whose value is not resolved yet; union
/// treats it as the empty set.
using FunctionSummary = std::map<AccessPath, std::optional<HeapSet>>;

std::string constraint_to_string(const Constraint& c,
                                 const ProgramIndex& index);

/// Intra-procedural inclusion constraints of `f`. Allocation and call
/// results take their objects from the pre-analysis, collapsed over every
/// context `f` is reached under.
ConstraintSet make_constraints(const PreAnalysis& pre, MethodId f);

/// Least solution. Paths reached from some member constraint are resolved,
/// all other paths that occur in `cs` are unresolved.
FunctionSummary cubic_solve(const ConstraintSet& cs);

/// A function of a bridge callgraph: the root (no `via`) or a bridged method
/// specialized for the interface variable it is reached through.
struct BridgedFn {
  MethodId method = 0;
  std::optional<std::string> via;

  auto operator<=>(const BridgedFn&) const = default;
  bool operator==(const BridgedFn&) const = default;
};

using SummaryMap = std::map<BridgedFn, FunctionSummary>;
using ConstraintMap = std::map<BridgedFn, ConstraintSet>;

struct Specialization {
  ConstraintMap constraints;
  SummaryMap solved;   // per function, before unification
  SummaryMap unified;
};

/// Constraints of every function of `b` with `this` replaced by the
/// interface variable and guest actuals bound to formals.
ConstraintMap specialized_constraints(const BridgeCallGraph& b,
                                      const PreAnalysis& host,
                                      const PreAnalysis& guest);

Specialization specialize_summary(const BridgeCallGraph& b,
                                  const PreAnalysis& host,
                                  const PreAnalysis& guest);

/// Alias-aware union. Bases are grouped by plain copies between them and by
/// overlapping resolved sets; field paths over one group, and plain paths of
/// the same interface base, receive the union of their sets. With
/// constraints, each function is re-solved with the unified values until
/// nothing changes.
SummaryMap unify_summaries(const SummaryMap& summaries,
                           const ConstraintMap& constraints = {});

struct Projection {
  MethodId method = 0;
  Context ctx;
  std::map<std::string, HeapSet> entries;  // def(f), including $ret
};

/// Throws std::invalid_argument when `f` is not reached under `ctx`.
Projection project(MethodId f, const Context& ctx, const PreAnalysis& pre);

struct InjectionTarget {
  BridgedFn fn;
  Context ctx;  // context the function is analyzed under (the root's)
  std::vector<BridgeInvocation> callers;  // guest calls that reach fn
};

struct InjectionOutcome {
  std::vector<Location> host_seeds;
  std::vector<Location> guest_seeds;
  std::size_t pending = 0;  // field paths whose base has no objects yet
  bool changed = false;
};

/// Writes a unified summary into the host analysis in its native field
/// representation, passes the return set to guest call targets, and closes
/// both analyses again.
InjectionOutcome inject_summary(const Projection& r, PreAnalysis& host,
                                PreAnalysis& guest,
                                const FunctionSummary& summary,
                                const InjectionTarget& target);

}  // namespace polypta
