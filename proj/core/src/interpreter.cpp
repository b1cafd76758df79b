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

#include "polypta/interpreter.h"

#include <optional>

namespace polypta {

namespace {

struct OutOfSteps {};

struct Object {
  StmtId site;
  std::string cls;
  std::map<std::string, ObjectId> fields;
};

class Interpreter {
 public:
  Interpreter(const ProgramIndex& index, const InterpreterLimits& limits)
      : index_(index), limits_(limits) {}

  ObservedFacts run() {
    try {
      for (MethodId m : index_.host_entrypoints()) {
        call(m, std::nullopt, {}, 0);
      }
    } catch (const OutOfSteps&) {
      facts_.budget_exhausted = true;
    }
    return std::move(facts_);
  }

 private:
  using Value = std::optional<ObjectId>;
  using Frame = std::map<std::string, ObjectId>;

  struct Activation {
    MethodId method;
    Frame vars;
    Value ret;
    std::size_t depth;
  };

  Value get(const Activation& a, const std::string& var) const {
    if (index_.is_interface_ref(a.method, var)) {
      auto it = globals_.find(var);
      if (it == globals_.end()) return std::nullopt;
      return it->second;
    }
    auto it = a.vars.find(var);
    if (it == a.vars.end()) return std::nullopt;
    return it->second;
  }

  void bind(MethodId m, const std::string& var, ObjectId obj) {
    facts_.bindings.insert(ObservedBinding{m, var, obj, heap_.at(obj).site});
  }

  void set(Activation& a, const std::string& var, Value v) {
    if (!v) {
      a.vars.erase(var);
      return;
    }
    a.vars[var] = *v;
    bind(a.method, var, *v);
    const MethodInfo& info = index_.method(a.method);
    if (info.module == ModuleId::Host) {
      const InterfaceVar* iv = index_.find_interface_var(var);
      if (iv != nullptr && iv->method == info.decl->name) globals_[var] = *v;
    }
  }

  Value call(MethodId m, Value self, const std::vector<Value>& args,
             std::size_t depth) {
    if (depth >= limits_.max_depth) {
      facts_.depth_limited = true;
      return std::nullopt;
    }
    Activation a{m, {}, std::nullopt, depth};
    const MethodInfo& info = index_.method(m);
    if (self) set(a, kThisVar, self);
    for (std::size_t i = 0; i < info.decl->params.size() && i < args.size();
         ++i) {
      set(a, info.decl->params[i], args[i]);
    }
    exec(a, info.decl->body);
    return a.ret;
  }

  void step() {
    if (facts_.steps >= limits_.step_budget) throw OutOfSteps{};
    ++facts_.steps;
  }

  void exec(Activation& a, const Block& block) {
    for (const Stmt& s : block) exec(a, s);
  }

  void exec(Activation& a, const Stmt& stmt) {
    step();
    const ModuleId module = index_.method(a.method).module;
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, NewStmt> ||
                        std::is_same_v<T, InterfaceNewStmt>) {
            ObjectId id = next_id_++;
            heap_.emplace(id, Object{stmt.id, s.cls, {}});
            facts_.objects.emplace(id, stmt.id);
            set(a, s.target, id);
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            set(a, s.target, get(a, s.source));
          } else if constexpr (std::is_same_v<T, LoadStmt>) {
            Value base = get(a, s.base);
            if (!base) return;
            const auto& fields = heap_.at(*base).fields;
            auto it = fields.find(s.field);
            set(a, s.target,
                it == fields.end() ? Value{} : Value{it->second});
          } else if constexpr (std::is_same_v<T, StoreStmt>) {
            Value base = get(a, s.base);
            if (!base) return;
            Value v = get(a, s.source);
            if (v) {
              heap_.at(*base).fields[s.field] = *v;
            } else {
              heap_.at(*base).fields.erase(s.field);
            }
          } else if constexpr (std::is_same_v<T, InvokeStmt>) {
            std::vector<Value> args;
            for (const std::string& arg : s.args) args.push_back(get(a, arg));
            std::optional<MethodId> callee;
            Value self;
            if (s.receiver) {
              self = get(a, *s.receiver);
              if (!self) return;
              const ClassInfo* cls = index_.find_class(heap_.at(*self).cls);
              if (cls == nullptr) return;
              auto it = cls->methods.find(s.method);
              if (it == cls->methods.end()) return;
              callee = it->second;
            } else {
              callee = index_.find_top_level(module, s.method);
              if (!callee) return;
            }
            facts_.trace.emplace_back(a.method, *callee);
            Value r = call(*callee, self, args, a.depth + 1);
            if (s.target) set(a, *s.target, r);
          } else if constexpr (std::is_same_v<T, EvalStmt>) {
            auto callee = index_.find_top_level(ModuleId::Guest, s.guest_method);
            if (!callee) return;
            facts_.trace.emplace_back(a.method, *callee);
            Value r = call(*callee, std::nullopt, {}, a.depth + 1);
            if (s.target) set(a, *s.target, r);
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            exec(a, s.then_body);
            if (s.else_body) exec(a, *s.else_body);
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            exec(a, s.body);
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            Value v = get(a, s.source);
            a.ret = v;
            if (v) bind(a.method, kReturnVar, *v);
          }
        },
        stmt.node);
  }

  const ProgramIndex& index_;
  InterpreterLimits limits_;
  ObservedFacts facts_;
  std::map<ObjectId, Object> heap_;
  std::map<std::string, ObjectId> globals_;
  ObjectId next_id_ = 1;
};

}  // namespace

ObservedFacts interpret(const ProgramIndex& index,
                        const InterpreterLimits& limits) {
  return Interpreter(index, limits).run();
}

}  // namespace polypta
