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

#include "polypta/program_index.h"

#include <algorithm>
#include <stdexcept>

namespace polypta {

ProgramIndex::ProgramIndex(const Program& program) : program_(program) {
  for (ModuleId mod : {ModuleId::Host, ModuleId::Guest}) {
    const ModuleDecl& m = program.module(mod);
    for (const MethodDecl& decl : m.methods) add_method(mod, decl, nullptr);
    for (const ClassDecl& c : m.classes) {
      ClassInfo info;
      info.module = mod;
      info.decl = &c;
      for (const MethodDecl& decl : c.methods) {
        info.methods.emplace(decl.name, static_cast<MethodId>(methods_.size()));
        add_method(mod, decl, &c);
      }
      classes_.emplace(c.name, std::move(info));
    }
  }
  registry_ = polypta::interface_vars(program);
  for (const InterfaceVar& iv : registry_) {
    auto it = classes_.find(iv.cls);
    if (it == classes_.end()) continue;
    it->second.bridge = true;
    for (const auto& [name, id] : it->second.methods) bridge_methods_.insert(id);
  }
}

void ProgramIndex::add_method(ModuleId module, const MethodDecl& decl,
                              const ClassDecl* owner) {
  MethodInfo info;
  info.id = static_cast<MethodId>(methods_.size());
  info.module = module;
  info.decl = &decl;
  info.owner = owner;
  info.qualified = std::string(module_name(module)) + "::" + decl.name;
  info.locals.insert(decl.params.begin(), decl.params.end());
  if (owner) info.locals.insert(kThisVar);
  std::uint32_t ordinal = 0;
  for_each_stmt(decl.body, [&](const Stmt& s) {
    info.stmts.push_back(&s);
    if (s.id == kNoStmt) {
      throw std::logic_error("ProgramIndex requires numbered statements");
    }
    if (sites_.size() <= s.id) sites_.resize(s.id + 1);
    sites_[s.id] = SiteInfo{info.id, &s, ordinal++};
    if (!std::holds_alternative<ReturnStmt>(s.node)) {
      if (auto d = defined_var(s)) info.locals.insert(*d);
    }
  });
  info.defs.assign(info.locals.begin(), info.locals.end());
  bool returns = std::any_of(info.stmts.begin(), info.stmts.end(),
                             [](const Stmt* s) {
                               return std::holds_alternative<ReturnStmt>(s->node);
                             });
  if (returns) info.defs.push_back(kReturnVar);
  std::sort(info.defs.begin(), info.defs.end());
  by_name_[static_cast<int>(module)].emplace(decl.name, info.id);
  methods_.push_back(std::move(info));
}

std::vector<MethodId> ProgramIndex::methods_of(ModuleId module) const {
  std::vector<MethodId> out;
  for (const MethodInfo& m : methods_) {
    if (m.module == module) out.push_back(m.id);
  }
  return out;
}

std::optional<MethodId> ProgramIndex::find_method(ModuleId module,
                                                  std::string_view name) const {
  const auto& names = by_name_[static_cast<int>(module)];
  auto it = names.find(name);
  if (it == names.end()) return std::nullopt;
  return it->second;
}

std::optional<MethodId> ProgramIndex::find_top_level(
    ModuleId module, std::string_view name) const {
  auto id = find_method(module, name);
  if (id && methods_[*id].owner == nullptr) return id;
  return std::nullopt;
}

const ClassInfo* ProgramIndex::find_class(std::string_view name) const {
  auto it = classes_.find(name);
  return it == classes_.end() ? nullptr : &it->second;
}

std::string ProgramIndex::method_label(MethodId method) const {
  if (method == kGlobalScope) return "guest::<interface>";
  return methods_.at(method).qualified;
}

std::string ProgramIndex::site_label(SiteCode code) const {
  if (code >= stmt_count()) {
    return "entry:" + method_label(code - stmt_count());
  }
  const SiteInfo& s = sites_.at(code);
  return methods_.at(s.method).qualified + "#" + std::to_string(s.ordinal);
}

std::string ProgramIndex::context_label(const Context& ctx) const {
  std::string out = "[";
  for (std::size_t i = 0; i < ctx.sites().size(); ++i) {
    if (i) out += ", ";
    out += site_label(ctx.sites()[i]);
  }
  return out + "]";
}

std::string ProgramIndex::alloc_label(StmtId site) const {
  const SiteInfo& s = sites_.at(site);
  return std::visit(
      [&](const auto& st) -> std::string {
        using T = std::decay_t<decltype(st)>;
        if constexpr (std::is_same_v<T, NewStmt> ||
                      std::is_same_v<T, InterfaceNewStmt>) {
          if (st.label) return *st.label;
          return st.cls + "@" + site_label(site);
        } else {
          throw std::invalid_argument("statement is not an allocation");
        }
      },
      s.stmt->node);
}

const std::string& ProgramIndex::alloc_class(StmtId site) const {
  const Stmt& s = *sites_.at(site).stmt;
  if (const auto* n = std::get_if<NewStmt>(&s.node)) return n->cls;
  if (const auto* n = std::get_if<InterfaceNewStmt>(&s.node)) return n->cls;
  throw std::invalid_argument("statement is not an allocation");
}

const InterfaceVar* ProgramIndex::find_interface_var(
    std::string_view name) const {
  for (const InterfaceVar& iv : registry_) {
    if (iv.var == name) return &iv;
  }
  return nullptr;
}

bool ProgramIndex::is_interface_ref(MethodId method,
                                    std::string_view name) const {
  const MethodInfo& m = methods_.at(method);
  if (m.module != ModuleId::Guest) return false;
  if (m.locals.count(std::string(name))) return false;
  return find_interface_var(name) != nullptr;
}

std::vector<MethodId> ProgramIndex::host_entrypoints() const {
  std::vector<MethodId> out;
  for (const MethodInfo& m : methods_) {
    if (m.module == ModuleId::Host && m.owner == nullptr) out.push_back(m.id);
  }
  return out;
}

}  // namespace polypta
