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

#include "polypta/validate.h"

#include <map>

namespace polypta {

const char* diag_code_name(DiagCode code) {
  switch (code) {
    case DiagCode::Syntax: return "syntax";
    case DiagCode::DuplicateMethod: return "duplicate-method";
    case DiagCode::DuplicateClass: return "duplicate-class";
    case DiagCode::DuplicateField: return "duplicate-field";
    case DiagCode::DuplicateParam: return "duplicate-param";
    case DiagCode::DuplicateLabel: return "duplicate-label";
    case DiagCode::UnknownEvalTarget: return "unknown-eval-target";
    case DiagCode::UnknownInterfaceClass: return "unknown-interface-class";
    case DiagCode::UnknownClass: return "unknown-class";
    case DiagCode::UnknownMethod: return "unknown-method";
    case DiagCode::UnknownField: return "unknown-field";
    case DiagCode::UndeclaredVariable: return "undeclared-variable";
    case DiagCode::ReservedName: return "reserved-name";
    case DiagCode::ArityMismatch: return "arity-mismatch";
    case DiagCode::InterfaceMisuse: return "interface-misuse";
    case DiagCode::ModuleMisuse: return "module-misuse";
  }
  return "?";
}

std::string Diagnostic::to_string() const {
  std::string s = std::to_string(pos.line) + ":" + std::to_string(pos.column) +
                  ": " + module_name(module);
  if (!method.empty()) s += "::" + method;
  s += ": " + message + " [" + diag_code_name(code) + "]";
  return s;
}

namespace {

template <typename Fn>
void for_each_method(const ModuleDecl& m, Fn&& fn) {
  for (const MethodDecl& method : m.methods) fn(method);
  for (const ClassDecl& c : m.classes) {
    for (const MethodDecl& method : c.methods) fn(method);
  }
}

class Validator {
 public:
  explicit Validator(const Program& p) : p_(p) {}

  std::vector<Diagnostic> run() {
    collect();
    check_module(ModuleId::Host);
    check_module(ModuleId::Guest);
    return std::move(diags_);
  }

 private:
  struct ClassInfo {
    ModuleId module;
    const ClassDecl* decl;
  };

  void report(DiagCode code, std::string msg, ModuleId module,
              const MethodDecl* method, const Stmt* stmt, SourcePos pos) {
    Diagnostic d;
    d.code = code;
    d.message = std::move(msg);
    d.module = module;
    if (method) d.method = method->name;
    if (stmt) {
      d.stmt = stmt->id;
      d.pos = stmt->pos;
    } else {
      d.pos = pos;
    }
    diags_.push_back(std::move(d));
  }

  void collect() {
    for (ModuleId mod : {ModuleId::Host, ModuleId::Guest}) {
      const ModuleDecl& m = p_.module(mod);
      auto& names = methods_[static_cast<int>(mod)];
      for_each_method(m, [&](const MethodDecl& method) {
        if (!names.emplace(method.name, &method).second) {
          report(DiagCode::DuplicateMethod,
                 "duplicate method '" + method.name + "'", mod, &method,
                 nullptr, method.pos);
        }
      });
      for (const MethodDecl& method : m.methods) {
        top_level_[static_cast<int>(mod)].emplace(method.name, &method);
      }
      for (const ClassDecl& c : m.classes) {
        if (!classes_.emplace(c.name, ClassInfo{mod, &c}).second) {
          report(DiagCode::DuplicateClass, "duplicate class '" + c.name + "'",
                 mod, nullptr, nullptr, c.pos);
        }
        std::set<std::string> seen;
        for (const std::string& f : c.fields) {
          fields_.insert(f);
          if (!seen.insert(f).second) {
            report(DiagCode::DuplicateField,
                   "duplicate field '" + f + "' in class '" + c.name + "'",
                   mod, nullptr, nullptr, c.pos);
          }
        }
      }
    }
    // Interface variables and bridge classes.
    for_each_method(p_.host, [&](const MethodDecl& method) {
      for_each_stmt(method.body, [&](const Stmt& s) {
        if (const auto* in = std::get_if<InterfaceNewStmt>(&s.node)) {
          auto cls = classes_.find(in->cls);
          if (cls == classes_.end() || cls->second.module != ModuleId::Host) {
            report(DiagCode::UnknownInterfaceClass,
                   "interface variable '" + in->target +
                       "' names unknown host class '" + in->cls + "'",
                   ModuleId::Host, &method, &s, {});
          } else {
            bridge_classes_.insert(in->cls);
          }
          if (!iface_vars_.emplace(in->target, &method).second) {
            report(DiagCode::InterfaceMisuse,
                   "interface variable '" + in->target + "' declared twice",
                   ModuleId::Host, &method, &s, {});
          }
        }
      });
    });
    for (const std::string& cls : bridge_classes_) {
      for (const MethodDecl& m : classes_.at(cls).decl->methods) {
        bridge_methods_.emplace(m.name, &m);
      }
    }
  }

  const MethodDecl* find_method(ModuleId mod, const std::string& name) const {
    const auto& names = methods_[static_cast<int>(mod)];
    auto it = names.find(name);
    return it == names.end() ? nullptr : it->second;
  }

  void check_module(ModuleId mod) {
    for_each_method(p_.module(mod),
                    [&](const MethodDecl& m) { check_method(mod, m); });

    for_each_method(p_.module(mod), [&](const MethodDecl& m) {
      for_each_stmt(m.body, [&](const Stmt& s) {
        const std::optional<std::string>* label = nullptr;
        if (const auto* n = std::get_if<NewStmt>(&s.node)) label = &n->label;
        if (const auto* n = std::get_if<InterfaceNewStmt>(&s.node)) {
          label = &n->label;
        }
        if (label && *label && !labels_.insert(**label).second) {
          report(DiagCode::DuplicateLabel,
                 "allocation label '" + **label + "' used twice", mod, &m, &s,
                 {});
        }
      });
    });
  }

  void check_method(ModuleId mod, const MethodDecl& m) {
    std::set<std::string> locals;
    for (const std::string& param : m.params) {
      if (param == kReturnVar || param == kThisVar) {
        report(DiagCode::ReservedName, "'" + param + "' is reserved", mod, &m,
               nullptr, m.pos);
      }
      if (!locals.insert(param).second) {
        report(DiagCode::DuplicateParam, "duplicate parameter '" + param + "'",
               mod, &m, nullptr, m.pos);
      }
    }
    if (m.owner) locals.insert(kThisVar);
    for_each_stmt(m.body, [&](const Stmt& s) {
      if (std::holds_alternative<ReturnStmt>(s.node)) return;
      if (auto d = defined_var(s)) {
        if (*d == kReturnVar || *d == kThisVar) {
          report(DiagCode::ReservedName,
                 "'" + *d + "' is reserved and cannot be assigned", mod, &m,
                 &s, {});
        }
        locals.insert(*d);
      }
    });

    for (const std::string& local : locals) {
      auto iv = iface_vars_.find(local);
      if (iv == iface_vars_.end()) continue;
      if (mod == ModuleId::Guest) {
        report(DiagCode::InterfaceMisuse,
               "guest method defines interface variable '" + local + "'", mod,
               &m, nullptr, m.pos);
      } else if (iv->second != &m) {
        report(DiagCode::InterfaceMisuse,
               "interface variable '" + local +
                   "' is local to another host method",
               mod, &m, nullptr, m.pos);
      }
    }

    auto check_var = [&](const std::string& v, const Stmt& s) {
      if (locals.count(v)) return;
      if (mod == ModuleId::Guest && iface_vars_.count(v)) return;
      report(DiagCode::UndeclaredVariable, "undeclared variable '" + v + "'",
             mod, &m, &s, {});
    };

    for_each_stmt(m.body, [&](const Stmt& s) {
      for (const std::string& v : used_vars(s)) check_var(v, s);
      check_stmt(mod, m, s);
    });
  }

  void check_arity(ModuleId mod, const MethodDecl& m, const Stmt& s,
                   const MethodDecl& callee, std::size_t argc) {
    if (callee.params.size() != argc) {
      report(DiagCode::ArityMismatch,
             "'" + callee.name + "' expects " +
                 std::to_string(callee.params.size()) + " argument(s), got " +
                 std::to_string(argc),
             mod, &m, &s, {});
    }
  }

  void check_stmt(ModuleId mod, const MethodDecl& m, const Stmt& s) {
    std::visit(
        [&](const auto& st) {
          using T = std::decay_t<decltype(st)>;
          if constexpr (std::is_same_v<T, NewStmt>) {
            auto cls = classes_.find(st.cls);
            if (cls == classes_.end()) {
              report(DiagCode::UnknownClass, "unknown class '" + st.cls + "'",
                     mod, &m, &s, {});
            } else if (cls->second.module != mod) {
              report(DiagCode::ModuleMisuse,
                     "class '" + st.cls + "' belongs to the " +
                         module_name(cls->second.module) + " module",
                     mod, &m, &s, {});
            }
          } else if constexpr (std::is_same_v<T, InterfaceNewStmt>) {
            if (mod != ModuleId::Host) {
              report(DiagCode::ModuleMisuse,
                     "interface variables are declared by the host", mod, &m,
                     &s, {});
            }
          } else if constexpr (std::is_same_v<T, EvalStmt>) {
            if (mod != ModuleId::Host) {
              report(DiagCode::ModuleMisuse, "eval is a host construct", mod,
                     &m, &s, {});
            }
            if (!top_level_[1].count(st.guest_method)) {
              report(DiagCode::UnknownEvalTarget,
                     "unknown guest method '" + st.guest_method + "'", mod, &m,
                     &s, {});
            }
          } else if constexpr (std::is_same_v<T, LoadStmt> ||
                               std::is_same_v<T, StoreStmt>) {
            if (!fields_.count(st.field)) {
              report(DiagCode::UnknownField,
                     "undeclared field '" + st.field + "'", mod, &m, &s, {});
            }
          } else if constexpr (std::is_same_v<T, InvokeStmt>) {
            check_invoke(mod, m, s, st);
          }
        },
        s.node);
  }

  void check_invoke(ModuleId mod, const MethodDecl& m, const Stmt& s,
                    const InvokeStmt& st) {
    if (!st.receiver) {
      auto& top = top_level_[static_cast<int>(mod)];
      auto it = top.find(st.method);
      if (it == top.end()) {
        report(DiagCode::UnknownMethod,
               "unknown " + std::string(module_name(mod)) + " method '" +
                   st.method + "'",
               mod, &m, &s, {});
        return;
      }
      check_arity(mod, m, s, *it->second, st.args.size());
      return;
    }
    const MethodDecl* own = find_method(mod, st.method);
    if (own && !own->owner) own = nullptr;  // top-level methods need no receiver
    if (own) {
      check_arity(mod, m, s, *own, st.args.size());
      return;
    }
    if (mod == ModuleId::Guest) {
      auto it = bridge_methods_.find(st.method);
      if (it != bridge_methods_.end()) {
        check_arity(mod, m, s, *it->second, st.args.size());
        return;
      }
    }
    report(DiagCode::UnknownMethod,
           "no " + std::string(module_name(mod)) + " class or bridge method '" +
               st.method + "'",
           mod, &m, &s, {});
  }

  const Program& p_;
  std::vector<Diagnostic> diags_;
  std::map<std::string, const MethodDecl*> methods_[2];
  std::map<std::string, const MethodDecl*> top_level_[2];
  std::map<std::string, ClassInfo> classes_;
  std::set<std::string> fields_;
  std::set<std::string> bridge_classes_;
  std::map<std::string, const MethodDecl*> bridge_methods_;
  std::map<std::string, const MethodDecl*> iface_vars_;
  std::set<std::string> labels_;
};

}  // namespace

InterfaceVarRegistry interface_vars(const Program& program) {
  InterfaceVarRegistry out;
  for_each_method(program.host, [&](const MethodDecl& m) {
    for_each_stmt(m.body, [&](const Stmt& s) {
      if (const auto* in = std::get_if<InterfaceNewStmt>(&s.node)) {
        out.insert({in->target, m.name, in->cls});
      }
    });
  });
  return out;
}

std::vector<Diagnostic> validate(const Program& program) {
  return Validator(program).run();
}

}  // namespace polypta
