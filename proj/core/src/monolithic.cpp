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

#include "polypta/monolithic.h"

namespace polypta {

namespace {

class Monolithic {
 public:
  Monolithic(const ProgramIndex& index, const AnalysisConfig& cfg)
      : index_(index), cfg_(cfg) {}

  MonolithicResult run() {
    for (MethodId m : index_.host_entrypoints()) {
      Context ctx;
      if (cfg_.k > 0) ctx = Context({index_.entry_site(m)});
      reach(m, ctx);
    }
    do {
      changed_ = false;
      const std::set<CallNode> nodes = out_.reachable;
      for (const CallNode& n : nodes) {
        for (const Stmt* s : index_.method(n.method).stmts) apply(n, *s);
      }
      for (const InterfaceVar& iv : index_.interface_vars()) {
        auto m = index_.find_method(ModuleId::Host, iv.method);
        if (!m) continue;
        HeapSet all;
        for (const CallNode& n : out_.reachable) {
          if (n.method == *m) merge_into(all, var(*m, iv.var, n.ctx));
        }
        add(global(iv.var), all);
      }
    } while (changed_);
    return std::move(out_);
  }

 private:
  VarKey key(MethodId m, const std::string& v, const Context& ctx) const {
    if (index_.is_interface_ref(m, v)) return global(v);
    return VarKey{m, v, ctx};
  }
  static VarKey global(const std::string& v) {
    return VarKey{kGlobalScope, v, Context{}};
  }
  HeapSet& var(MethodId m, const std::string& v, const Context& ctx) {
    return out_.vars[key(m, v, ctx)];
  }
  void add(const VarKey& k, const HeapSet& s) {
    HeapSet copy = s;
    if (merge_into(out_.vars[k], copy)) changed_ = true;
  }
  void add_field(const FieldKey& k, const HeapSet& s) {
    HeapSet copy = s;
    if (merge_into(out_.fields[k], copy)) changed_ = true;
  }
  FieldKey fkey(const HeapObject& o, const std::string& f) const {
    switch (cfg_.field_mode) {
      case FieldMode::Sensitive:
        return FieldKey{o, f};
      case FieldMode::Based:
        return FieldKey{std::nullopt, f};
      case FieldMode::Insensitive:
        return FieldKey{o, ""};
    }
    return FieldKey{o, f};
  }

  void reach(MethodId m, const Context& ctx) {
    if (out_.reachable.insert(CallNode{m, ctx}).second) changed_ = true;
  }

  void enter(const CallNode& caller, MethodId callee, StmtId site,
             const std::vector<std::string>& args,
             const std::optional<std::string>& target,
             const std::optional<HeapObject>& self) {
    Context cctx = caller.ctx.push(site, cfg_.k);
    reach(callee, cctx);
    const MethodDecl& decl = *index_.method(callee).decl;
    for (std::size_t i = 0; i < args.size() && i < decl.params.size(); ++i) {
      add(key(callee, decl.params[i], cctx),
          var(caller.method, args[i], caller.ctx));
    }
    if (self) add(key(callee, kThisVar, cctx), HeapSet{*self});
    if (target) {
      add(key(caller.method, *target, caller.ctx),
          var(callee, kReturnVar, cctx));
    }
  }

  void apply(const CallNode& n, const Stmt& stmt) {
    const MethodId m = n.method;
    const Context& ctx = n.ctx;
    const ModuleId module = index_.method(m).module;
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, NewStmt> ||
                        std::is_same_v<T, InterfaceNewStmt>) {
            add(key(m, s.target, ctx), HeapSet{HeapObject{stmt.id, ctx}});
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            add(key(m, s.target, ctx), var(m, s.source, ctx));
          } else if constexpr (std::is_same_v<T, LoadStmt>) {
            const HeapSet base = var(m, s.base, ctx);
            if (cfg_.field_mode == FieldMode::Based) {
              add(key(m, s.target, ctx),
                  out_.fields[FieldKey{std::nullopt, s.field}]);
              return;
            }
            for (const HeapObject& o : base) {
              add(key(m, s.target, ctx), out_.fields[fkey(o, s.field)]);
            }
          } else if constexpr (std::is_same_v<T, StoreStmt>) {
            const HeapSet src = var(m, s.source, ctx);
            if (cfg_.field_mode == FieldMode::Based) {
              add_field(FieldKey{std::nullopt, s.field}, src);
              return;
            }
            const HeapSet base = var(m, s.base, ctx);
            for (const HeapObject& o : base) add_field(fkey(o, s.field), src);
          } else if constexpr (std::is_same_v<T, InvokeStmt>) {
            if (!s.receiver) {
              auto callee = index_.find_top_level(module, s.method);
              if (callee) enter(n, *callee, stmt.id, s.args, s.target, {});
              return;
            }
            const HeapSet recv = var(m, *s.receiver, ctx);
            for (const HeapObject& o : recv) {
              const ClassInfo* cls = index_.find_class(index_.alloc_class(o.site));
              if (cls == nullptr) continue;
              auto it = cls->methods.find(s.method);
              if (it == cls->methods.end()) continue;
              enter(n, it->second, stmt.id, s.args, s.target, o);
            }
          } else if constexpr (std::is_same_v<T, EvalStmt>) {
            auto callee = index_.find_top_level(ModuleId::Guest, s.guest_method);
            if (callee) enter(n, *callee, stmt.id, {}, s.target, {});
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            add(key(m, kReturnVar, ctx), var(m, s.source, ctx));
          }
        },
        stmt.node);
  }

  const ProgramIndex& index_;
  AnalysisConfig cfg_;
  MonolithicResult out_;
  bool changed_ = false;
};

}  // namespace

MonolithicResult monolithic_andersen(const ProgramIndex& index,
                                     const AnalysisConfig& cfg) {
  check_config(cfg);
  return Monolithic(index, cfg).run();
}

}  // namespace polypta
