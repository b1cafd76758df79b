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

#include "polypta/ast.h"

namespace polypta {

const char* module_name(ModuleId module) {
  return module == ModuleId::Host ? "host" : "guest";
}

bool IfStmt::operator==(const IfStmt& other) const {
  return cond == other.cond && then_body == other.then_body &&
         else_body == other.else_body;
}

bool WhileStmt::operator==(const WhileStmt& other) const {
  return cond == other.cond && body == other.body;
}

namespace {

void number_block(Block& block, StmtId& next) {
  for (Stmt& stmt : block) {
    stmt.id = next++;
    if (auto* s = std::get_if<IfStmt>(&stmt.node)) {
      number_block(s->then_body, next);
      if (s->else_body) number_block(*s->else_body, next);
    } else if (auto* w = std::get_if<WhileStmt>(&stmt.node)) {
      number_block(w->body, next);
    }
  }
}

void number_module(ModuleDecl& module, StmtId& next) {
  for (MethodDecl& m : module.methods) number_block(m.body, next);
  for (ClassDecl& c : module.classes) {
    for (MethodDecl& m : c.methods) number_block(m.body, next);
  }
}

}  // namespace

StmtId number_statements(Program& program) {
  StmtId next = 0;
  number_module(program.host, next);
  number_module(program.guest, next);
  return next;
}

std::optional<std::string> defined_var(const Stmt& stmt) {
  return std::visit(
      [](const auto& s) -> std::optional<std::string> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NewStmt> ||
                      std::is_same_v<T, InterfaceNewStmt> ||
                      std::is_same_v<T, AssignStmt> ||
                      std::is_same_v<T, LoadStmt>) {
          return s.target;
        } else if constexpr (std::is_same_v<T, InvokeStmt> ||
                             std::is_same_v<T, EvalStmt>) {
          return s.target;
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          return std::string(kReturnVar);
        } else {
          return std::nullopt;
        }
      },
      stmt.node);
}

std::vector<std::string> used_vars(const Stmt& stmt) {
  return std::visit(
      [](const auto& s) -> std::vector<std::string> {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, AssignStmt>) {
          return {s.source};
        } else if constexpr (std::is_same_v<T, LoadStmt>) {
          return {s.base};
        } else if constexpr (std::is_same_v<T, StoreStmt>) {
          return {s.base, s.source};
        } else if constexpr (std::is_same_v<T, InvokeStmt>) {
          std::vector<std::string> out;
          if (s.receiver) out.push_back(*s.receiver);
          out.insert(out.end(), s.args.begin(), s.args.end());
          return out;
        } else if constexpr (std::is_same_v<T, ReturnStmt>) {
          return {s.source};
        } else {
          return {};
        }
      },
      stmt.node);
}

}  // namespace polypta
