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

#include "polypta/pre_analysis.h"

#include <algorithm>
#include <stdexcept>

namespace polypta {

FieldKey field_key(FieldMode mode, const HeapObject& object,
                   const std::string& field) {
  switch (mode) {
    case FieldMode::Sensitive:
      return FieldKey{object, field};
    case FieldMode::Based:
      return FieldKey{std::nullopt, field};
    case FieldMode::Insensitive:
      return FieldKey{object, ""};
  }
  return FieldKey{object, field};
}

PreAnalysis::PreAnalysis(const ProgramIndex& index, ModuleId module,
                         AnalysisConfig cfg)
    : index_(&index), module_(module), cfg_(cfg) {
  check_config(cfg_);
}

Context PreAnalysis::entry_context(MethodId method) const {
  if (cfg_.k == 0) return Context{};
  return Context({index_->entry_site(method)});
}

VarKey PreAnalysis::var_key(MethodId method, std::string_view var,
                            const Context& ctx) const {
  if (index_->is_interface_ref(method, var)) {
    return VarKey{kGlobalScope, std::string(var), Context{}};
  }
  return VarKey{method, std::string(var), ctx};
}

PreAnalysis::NodeId PreAnalysis::node_for(const Location& loc) {
  if (const auto* v = std::get_if<VarKey>(&loc)) {
    auto it = var_nodes_.find(*v);
    if (it != var_nodes_.end()) return it->second;
    NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.emplace_back();
    node_loc_.push_back(loc);
    var_nodes_.emplace(*v, id);
    return id;
  }
  const auto& f = std::get<FieldKey>(loc);
  auto it = field_nodes_.find(f);
  if (it != field_nodes_.end()) return it->second;
  NodeId id = static_cast<NodeId>(nodes_.size());
  nodes_.emplace_back();
  node_loc_.push_back(loc);
  field_nodes_.emplace(f, id);
  return id;
}

std::optional<PreAnalysis::NodeId> PreAnalysis::find_node(
    const Location& loc) const {
  if (const auto* v = std::get_if<VarKey>(&loc)) {
    auto it = var_nodes_.find(*v);
    if (it == var_nodes_.end()) return std::nullopt;
    return it->second;
  }
  auto it = field_nodes_.find(std::get<FieldKey>(loc));
  if (it == field_nodes_.end()) return std::nullopt;
  return it->second;
}

PreAnalysis::NodeId PreAnalysis::var_node(MethodId method,
                                          std::string_view var,
                                          const Context& ctx) {
  return node_for(var_key(method, var, ctx));
}

PreAnalysis::NodeId PreAnalysis::field_node(const FieldKey& key) {
  return node_for(key);
}

void PreAnalysis::add_dep(NodeId from, NodeId to) {
  if (from != to) nodes_[from].deps.insert(to);
}

void PreAnalysis::add_pts(NodeId node, const HeapSet& heap) {
  if (cause_) add_dep(*cause_, node);
  for (const HeapObject& h : heap) {
    if (nodes_[node].pts.insert(h).second) {
      nodes_[node].delta.insert(h);
      ++facts_;
    }
  }
  if (!nodes_[node].delta.empty() && !nodes_[node].queued) {
    nodes_[node].queued = true;
    worklist_.push_back(node);
  }
}

void PreAnalysis::add_edge(NodeId from, NodeId to) {
  if (cause_) add_dep(*cause_, to);
  if (from == to) return;
  if (!nodes_[from].succ.insert(to).second) return;
  HeapSet current = nodes_[from].pts;
  add_pts(to, current);
}

bool PreAnalysis::add_reachable(MethodId method, const Context& ctx) {
  if (index_->method(method).module != module_) {
    throw std::invalid_argument("method " + index_->method_label(method) +
                                " is not part of this module");
  }
  return reach(method, ctx);
}

bool PreAnalysis::add_var_facts(MethodId method, const std::string& var,
                                const Context& ctx, const HeapSet& heap) {
  std::size_t before = facts_;
  add_pts(var_node(method, var, ctx), heap);
  return facts_ != before;
}

bool PreAnalysis::add_field_facts(const FieldKey& key, const HeapSet& heap) {
  std::size_t before = facts_;
  add_pts(field_node(key), heap);
  return facts_ != before;
}

bool PreAnalysis::add_location_facts(const Location& loc,
                                     const HeapSet& heap) {
  std::size_t before = facts_;
  add_pts(node_for(loc), heap);
  return facts_ != before;
}

bool PreAnalysis::reach(MethodId method, const Context& ctx) {
  CallNode node{method, ctx};
  if (!cg_.nodes.insert(node).second) return false;
  contexts_[method].insert(ctx);
  ++facts_;
  const MethodInfo& info = index_->method(method);
  for (const std::string& d : info.defs) {
    NodeId n = var_node(method, d, ctx);
    if (cause_) add_dep(*cause_, n);
  }
  for (const Stmt* s : info.stmts) generate(node, *s);
  return true;
}

void PreAnalysis::apply_load(NodeId base, const FieldUse& use,
                             const HeapSet& objs) {
  for (const HeapObject& o : objs) {
    NodeId f = field_node(field_key(cfg_.field_mode, o, use.field));
    add_dep(base, use.other);
    add_edge(f, use.other);
  }
}

void PreAnalysis::apply_store(NodeId base, const FieldUse& use,
                              const HeapSet& objs) {
  for (const HeapObject& o : objs) {
    NodeId f = field_node(field_key(cfg_.field_mode, o, use.field));
    add_dep(base, f);
    add_edge(use.other, f);
  }
}

void PreAnalysis::bind_call(const CallNode& caller, MethodId callee,
                            const Context& callee_ctx,
                            const std::vector<NodeId>& args,
                            std::optional<NodeId> target) {
  reach(callee, callee_ctx);
  if (cg_.edges.insert({caller, CallNode{callee, callee_ctx}}).second) {
    ++facts_;
  }
  const MethodDecl& decl = *index_->method(callee).decl;
  std::size_t n = std::min(args.size(), decl.params.size());
  for (std::size_t i = 0; i < n; ++i) {
    add_edge(args[i], var_node(callee, decl.params[i], callee_ctx));
  }
  if (target) add_edge(var_node(callee, kReturnVar, callee_ctx), *target);
}

void PreAnalysis::generate(const CallNode& node, const Stmt& stmt) {
  const MethodId m = node.method;
  const Context& ctx = node.ctx;
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NewStmt> ||
                      std::is_same_v<T, InterfaceNewStmt>) {
          add_pts(var_node(m, s.target, ctx), HeapSet{HeapObject{stmt.id, ctx}});
        } else if constexpr (std::is_same_v<T, AssignStmt>) {
          add_edge(var_node(m, s.source, ctx), var_node(m, s.target, ctx));
        } else if constexpr (std::is_same_v<T, LoadStmt>) {
          NodeId target = var_node(m, s.target, ctx);
          if (cfg_.field_mode == FieldMode::Based) {
            add_edge(field_node(FieldKey{std::nullopt, s.field}), target);
            return;
          }
          NodeId base = var_node(m, s.base, ctx);
          FieldUse use{s.field, target};
          nodes_[base].loads.push_back(use);
          HeapSet current = nodes_[base].pts;
          apply_load(base, use, current);
        } else if constexpr (std::is_same_v<T, StoreStmt>) {
          NodeId source = var_node(m, s.source, ctx);
          if (cfg_.field_mode == FieldMode::Based) {
            add_edge(source, field_node(FieldKey{std::nullopt, s.field}));
            return;
          }
          NodeId base = var_node(m, s.base, ctx);
          FieldUse use{s.field, source};
          nodes_[base].stores.push_back(use);
          HeapSet current = nodes_[base].pts;
          apply_store(base, use, current);
        } else if constexpr (std::is_same_v<T, InvokeStmt>) {
          std::vector<NodeId> args;
          for (const std::string& a : s.args) args.push_back(var_node(m, a, ctx));
          std::optional<NodeId> target;
          if (s.target) target = var_node(m, *s.target, ctx);
          if (!s.receiver) {
            auto callee = index_->find_top_level(module_, s.method);
            if (!callee) return;
            bind_call(node, *callee, ctx.push(stmt.id, cfg_.k), args, target);
            return;
          }
          NodeId recv = var_node(m, *s.receiver, ctx);
          std::size_t call = calls_.size();
          calls_.push_back(CallUse{node, stmt.id, s.method, recv, args, target});
          nodes_[recv].calls.push_back(call);
          for (const NodeId a : args) add_dep(recv, a);
          HeapSet current = nodes_[recv].pts;
          for (const HeapObject& o : current) dispatch(call, o);
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          add_edge(var_node(m, s.source, ctx), var_node(m, kReturnVar, ctx));
        }
        // eval results are opaque to a single module; control flow is
        // handled by the flattened statement list.
      },
      stmt.node);
}

void PreAnalysis::dispatch(std::size_t call, const HeapObject& receiver) {
  const CallUse use = calls_[call];
  const ClassInfo* cls = index_->find_class(index_->alloc_class(receiver.site));
  if (cls == nullptr) return;
  if (cls->module != module_) {
    ++foreign_;
    return;
  }
  auto it = cls->methods.find(use.method);
  if (it == cls->methods.end()) return;
  const MethodId callee = it->second;
  const Context callee_ctx = use.caller.ctx.push(use.site, cfg_.k);
  std::optional<NodeId> saved = cause_;
  cause_ = use.receiver;
  bind_call(use.caller, callee, callee_ctx, use.args, use.target);
  add_pts(var_node(callee, kThisVar, callee_ctx), HeapSet{receiver});
  cause_ = saved;
}

void PreAnalysis::solve() {
  while (!worklist_.empty()) {
    NodeId n = worklist_.front();
    worklist_.pop_front();
    nodes_[n].queued = false;
    HeapSet delta = std::move(nodes_[n].delta);
    nodes_[n].delta.clear();
    if (delta.empty()) continue;

    std::vector<NodeId> succ(nodes_[n].succ.begin(), nodes_[n].succ.end());
    for (NodeId s : succ) add_pts(s, delta);
    for (std::size_t i = 0; i < nodes_[n].loads.size(); ++i) {
      FieldUse use = nodes_[n].loads[i];
      apply_load(n, use, delta);
    }
    for (std::size_t i = 0; i < nodes_[n].stores.size(); ++i) {
      FieldUse use = nodes_[n].stores[i];
      apply_store(n, use, delta);
    }
    for (std::size_t i = 0; i < nodes_[n].calls.size(); ++i) {
      std::size_t call = nodes_[n].calls[i];
      for (const HeapObject& o : delta) dispatch(call, o);
    }
  }
}

HeapSet PreAnalysis::points_to(const Location& loc) const {
  auto n = find_node(loc);
  if (!n) return {};
  return nodes_[*n].pts;
}

HeapSet PreAnalysis::points_to(MethodId method, std::string_view var,
                               const Context& ctx) const {
  return points_to(Location{var_key(method, var, ctx)});
}

HeapSet PreAnalysis::points_to_collapsed(MethodId method,
                                         std::string_view var) const {
  if (index_->is_interface_ref(method, var)) {
    return points_to(Location{var_key(method, var, Context{})});
  }
  HeapSet out;
  auto it = contexts_.find(method);
  if (it == contexts_.end()) return out;
  for (const Context& ctx : it->second) {
    merge_into(out, points_to(method, var, ctx));
  }
  return out;
}

VarPointsTo PreAnalysis::var_points_to() const {
  VarPointsTo out;
  for (const auto& [key, id] : var_nodes_) out.emplace(key, nodes_[id].pts);
  return out;
}

FldPointsTo PreAnalysis::fld_points_to() const {
  FldPointsTo out;
  for (const auto& [key, id] : field_nodes_) out.emplace(key, nodes_[id].pts);
  return out;
}

std::map<Location, HeapSet> PreAnalysis::snapshot() const {
  std::map<Location, HeapSet> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    out.emplace(node_loc_[i], nodes_[i].pts);
  }
  return out;
}

std::set<Context> PreAnalysis::contexts_of(MethodId method) const {
  auto it = contexts_.find(method);
  if (it == contexts_.end()) return {};
  return it->second;
}

bool PreAnalysis::is_reachable(MethodId method, const Context& ctx) const {
  return cg_.nodes.count(CallNode{method, ctx}) != 0;
}

std::set<Location> PreAnalysis::dependents(
    const std::vector<Location>& seeds) const {
  std::vector<NodeId> stack;
  std::vector<bool> seen(nodes_.size(), false);
  for (const Location& l : seeds) {
    if (auto n = find_node(l); n && !seen[*n]) {
      seen[*n] = true;
      stack.push_back(*n);
    }
  }
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    auto visit = [&](NodeId s) {
      if (!seen[s]) {
        seen[s] = true;
        stack.push_back(s);
      }
    };
    for (NodeId s : nodes_[n].succ) visit(s);
    for (NodeId s : nodes_[n].deps) visit(s);
  }
  std::set<Location> out;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (seen[i]) out.insert(node_loc_[i]);
  }
  return out;
}

PreAnalysis analyze_module(const ProgramIndex& index, ModuleId module,
                           const std::vector<Entrypoint>& entries,
                           const AnalysisConfig& cfg) {
  PreAnalysis pa(index, module, cfg);
  for (const Entrypoint& e : entries) {
    Context ctx = e.ctx ? *e.ctx : pa.entry_context(e.method);
    pa.add_reachable(e.method, ctx);
    pa.solve();
  }
  pa.solve();
  return pa;
}

PreAnalysis analyze_module(const ProgramIndex& index, ModuleId module,
                           const std::vector<std::string>& entries,
                           const AnalysisConfig& cfg) {
  std::vector<Entrypoint> resolved;
  for (const std::string& name : entries) {
    auto m = index.find_method(module, name);
    if (!m) {
      throw std::invalid_argument(std::string("unknown ") +
                                  module_name(module) + " entrypoint '" +
                                  name + "'");
    }
    resolved.push_back(Entrypoint{*m, std::nullopt});
  }
  return analyze_module(index, module, resolved, cfg);
}

std::vector<Entrypoint> host_entrypoints(const ProgramIndex& index) {
  std::vector<Entrypoint> out;
  for (MethodId m : index.host_entrypoints()) {
    out.push_back(Entrypoint{m, std::nullopt});
  }
  return out;
}

std::vector<Entrypoint> eval_entrypoints(const PreAnalysis& host) {
  const ProgramIndex& index = host.index();
  std::set<std::pair<MethodId, Context>> seen;
  std::vector<Entrypoint> out;
  for (const CallNode& node : host.call_graph().nodes) {
    for (const Stmt* s : index.method(node.method).stmts) {
      const auto* e = std::get_if<EvalStmt>(&s->node);
      if (e == nullptr) continue;
      auto g = index.find_top_level(ModuleId::Guest, e->guest_method);
      if (!g) continue;
      Context ctx = node.ctx.push(s->id, host.config().k);
      if (seen.emplace(*g, ctx).second) out.push_back(Entrypoint{*g, ctx});
    }
  }
  return out;
}

namespace {

bool intersects(const HeapSet& a, const HeapSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      return true;
    }
  }
  return false;
}

}  // namespace

std::set<std::string> may_alias(const PreAnalysis& pa, std::string_view var,
                                MethodId scope) {
  const ProgramIndex& index = pa.index();
  const MethodInfo& info = index.method(scope);
  std::set<std::string> visible = info.locals;
  std::multimap<std::string, std::string> copies;
  for (const Stmt* s : info.stmts) {
    for (const std::string& u : used_vars(*s)) {
      if (index.is_interface_ref(scope, u)) visible.insert(u);
    }
    if (const auto* a = std::get_if<AssignStmt>(&s->node)) {
      copies.emplace(a->source, a->target);
      copies.emplace(a->target, a->source);
    }
  }
  const std::string v(var);
  if (!visible.count(v) && !index.is_interface_ref(scope, v) &&
      !(info.module == ModuleId::Host && index.find_interface_var(v))) {
    throw std::invalid_argument("variable '" + v + "' is not visible in " +
                                index.method_label(scope));
  }

  std::set<std::string> out{v};
  HeapSet pts = pa.points_to_collapsed(scope, v);
  if (!pts.empty()) {
    for (const std::string& w : visible) {
      if (intersects(pa.points_to_collapsed(scope, w), pts)) out.insert(w);
    }
  }
  std::vector<std::string> stack{v};
  std::set<std::string> closed{v};
  while (!stack.empty()) {
    std::string cur = stack.back();
    stack.pop_back();
    auto [lo, hi] = copies.equal_range(cur);
    for (auto it = lo; it != hi; ++it) {
      if (closed.insert(it->second).second) {
        out.insert(it->second);
        stack.push_back(it->second);
      }
    }
  }
  return out;
}

std::vector<Context> call_contexts(const PreAnalysis& pa, StmtId locus,
                                   std::string_view var) {
  const ProgramIndex& index = pa.index();
  if (locus >= index.stmt_count()) {
    throw std::invalid_argument("unknown statement id");
  }
  const SiteInfo& site = index.site(locus);
  const Stmt& stmt = *site.stmt;
  bool ok = std::holds_alternative<NewStmt>(stmt.node) ||
            std::holds_alternative<InterfaceNewStmt>(stmt.node) ||
            std::holds_alternative<InvokeStmt>(stmt.node);
  auto d = defined_var(stmt);
  if (!ok || !d || *d != var) {
    throw std::invalid_argument("statement " + std::to_string(locus) +
                                " is not a New or Invoke defining '" +
                                std::string(var) + "'");
  }
  std::set<Context> ctxs = pa.contexts_of(site.method);
  if (ctxs.empty()) {
    throw std::invalid_argument("statement " + std::to_string(locus) +
                                " is unreachable");
  }
  return std::vector<Context>(ctxs.begin(), ctxs.end());
}

Context call_context(const PreAnalysis& pa, StmtId locus,
                     std::string_view var) {
  std::vector<Context> all = call_contexts(pa, locus, var);
  if (pa.config().k == 0) return Context{};
  return all.front();
}

}  // namespace polypta
