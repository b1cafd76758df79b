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

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace polypta {

enum class ModuleId : std::uint8_t { Host, Guest };

const char* module_name(ModuleId module);

/// Global statement identifier, assigned in pre-order over the host module
/// and then the guest module. Also used as call-site and allocation-site id.
using StmtId = std::uint32_t;
inline constexpr StmtId kNoStmt = 0xffffffffu;

struct SourcePos {
  int line = 0;
  int column = 0;
};

struct Stmt;
using Block = std::vector<Stmt>;

struct NewStmt {
  std::string target;
  std::string cls;
  std::optional<std::string> label;
  bool operator==(const NewStmt&) const = default;
};

// `iface i = new BridgeClass();` -- allocates a host object shared with the
// guest through the interface variable `target`.
struct InterfaceNewStmt {
  std::string target;
  std::string cls;
  std::optional<std::string> label;
  bool operator==(const InterfaceNewStmt&) const = default;
};

struct AssignStmt {
  std::string target;
  std::string source;
  bool operator==(const AssignStmt&) const = default;
};

struct LoadStmt {
  std::string target;
  std::string base;
  std::string field;
  bool operator==(const LoadStmt&) const = default;
};

struct StoreStmt {
  std::string base;
  std::string field;
  std::string source;
  bool operator==(const StoreStmt&) const = default;
};

struct InvokeStmt {
  std::optional<std::string> target;
  std::optional<std::string> receiver;  // empty for module-level calls
  std::string method;
  std::vector<std::string> args;
  bool operator==(const InvokeStmt&) const = default;
};

struct EvalStmt {
  std::optional<std::string> target;
  std::string guest_method;
  bool operator==(const EvalStmt&) const = default;
};

struct IfStmt {
  std::string cond;
  Block then_body;
  std::optional<Block> else_body;
  bool operator==(const IfStmt&) const;
};

struct WhileStmt {
  std::string cond;
  Block body;
  bool operator==(const WhileStmt&) const;
};

struct ReturnStmt {
  std::string source;
  bool operator==(const ReturnStmt&) const = default;
};

using StmtNode = std::variant<NewStmt, InterfaceNewStmt, AssignStmt, LoadStmt,
                              StoreStmt, InvokeStmt, EvalStmt, IfStmt,
                              WhileStmt, ReturnStmt>;

struct Stmt {
  StmtNode node;
  SourcePos pos;
  StmtId id = kNoStmt;

  // Structural equality: positions and ids are not compared.
  bool operator==(const Stmt& other) const { return node == other.node; }
};

struct MethodDecl {
  std::string name;
  std::vector<std::string> params;
  Block body;
  std::optional<std::string> owner;  // class members have an implicit `this`
  SourcePos pos;

  bool operator==(const MethodDecl& other) const {
    return name == other.name && params == other.params &&
           body == other.body && owner == other.owner;
  }
};

struct ClassDecl {
  std::string name;
  std::vector<std::string> fields;
  std::vector<MethodDecl> methods;
  SourcePos pos;

  bool operator==(const ClassDecl& other) const {
    return name == other.name && fields == other.fields &&
           methods == other.methods;
  }
};

struct ModuleDecl {
  std::vector<MethodDecl> methods;
  std::vector<ClassDecl> classes;
  bool operator==(const ModuleDecl&) const = default;
};

struct Program {
  ModuleDecl host;
  ModuleDecl guest;

  const ModuleDecl& module(ModuleId id) const {
    return id == ModuleId::Host ? host : guest;
  }
  ModuleDecl& module(ModuleId id) {
    return id == ModuleId::Host ? host : guest;
  }
  bool operator==(const Program&) const = default;
};

/// Reserved pseudo-variable holding a method's return value.
inline constexpr const char* kReturnVar = "$ret";
inline constexpr const char* kThisVar = "this";

/// Assigns statement ids in pre-order (host first, then guest). Returns the
/// number of statements.
StmtId number_statements(Program& program);

/// Visits every statement of a block in pre-order, descending into branches
/// and loop bodies.
template <typename Fn>
void for_each_stmt(const Block& block, Fn&& fn) {
  for (const Stmt& stmt : block) {
    fn(stmt);
    if (const auto* s = std::get_if<IfStmt>(&stmt.node)) {
      for_each_stmt(s->then_body, fn);
      if (s->else_body) for_each_stmt(*s->else_body, fn);
    } else if (const auto* w = std::get_if<WhileStmt>(&stmt.node)) {
      for_each_stmt(w->body, fn);
    }
  }
}

/// The variable a statement defines, if any.
std::optional<std::string> defined_var(const Stmt& stmt);

/// Variables a statement reads.
std::vector<std::string> used_vars(const Stmt& stmt);

}  // namespace polypta
