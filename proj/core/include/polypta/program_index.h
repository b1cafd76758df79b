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
#include <string_view>
#include <vector>

#include "polypta/ast.h"
#include "polypta/context.h"
#include "polypta/validate.h"

namespace polypta {

using MethodId = std::uint32_t;

/// Scope of the guest's view of interface variables (free names resolved
/// against the registry).
inline constexpr MethodId kGlobalScope = 0xffffffffu;

struct MethodInfo {
  MethodId id = 0;
  ModuleId module = ModuleId::Host;
  const MethodDecl* decl = nullptr;
  const ClassDecl* owner = nullptr;
  std::string qualified;  // module::name
  std::set<std::string> locals;     // params, `this`, assigned variables
  std::vector<std::string> defs;    // def(f): locals, plus `$ret` if f returns
  std::vector<const Stmt*> stmts;   // pre-order
};

struct SiteInfo {
  MethodId method = 0;
  const Stmt* stmt = nullptr;
  std::uint32_t ordinal = 0;  // pre-order position inside the method
};

struct ClassInfo {
  ModuleId module = ModuleId::Host;
  const ClassDecl* decl = nullptr;
  std::map<std::string, MethodId> methods;
  bool bridge = false;
};

/// Read-only lookup tables over a numbered, validated Program. The program
/// must outlive the index.
class ProgramIndex {
 public:
  explicit ProgramIndex(const Program& program);

  ProgramIndex(const ProgramIndex&) = delete;
  ProgramIndex& operator=(const ProgramIndex&) = delete;

  const Program& program() const { return program_; }

  std::size_t method_count() const { return methods_.size(); }
  const MethodInfo& method(MethodId id) const { return methods_.at(id); }
  std::vector<MethodId> methods_of(ModuleId module) const;

  std::optional<MethodId> find_method(ModuleId module,
                                      std::string_view name) const;
  std::optional<MethodId> find_top_level(ModuleId module,
                                         std::string_view name) const;
  const ClassInfo* find_class(std::string_view name) const;

  StmtId stmt_count() const { return static_cast<StmtId>(sites_.size()); }
  const SiteInfo& site(StmtId id) const { return sites_.at(id); }
  SiteCode entry_site(MethodId method) const { return stmt_count() + method; }

  std::string method_label(MethodId method) const;
  std::string site_label(SiteCode code) const;
  std::string context_label(const Context& ctx) const;
  std::string alloc_label(StmtId site) const;
  const std::string& alloc_class(StmtId site) const;

  const InterfaceVarRegistry& interface_vars() const { return registry_; }
  const InterfaceVar* find_interface_var(std::string_view name) const;

  /// Methods of every class allocated through an `iface` statement.
  const std::set<MethodId>& bridge_methods() const { return bridge_methods_; }

  /// True when `name` inside guest method `method` denotes an interface
  /// variable rather than a local.
  bool is_interface_ref(MethodId method, std::string_view name) const;

  /// Top-level host methods in declaration order.
  std::vector<MethodId> host_entrypoints() const;

 private:
  void add_method(ModuleId module, const MethodDecl& decl,
                  const ClassDecl* owner);

  const Program& program_;
  std::vector<MethodInfo> methods_;
  std::vector<SiteInfo> sites_;
  std::map<std::string, MethodId, std::less<>> by_name_[2];
  std::map<std::string, ClassInfo, std::less<>> classes_;
  InterfaceVarRegistry registry_;
  std::set<MethodId> bridge_methods_;
};

}  // namespace polypta
