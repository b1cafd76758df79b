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

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "polypta/ast.h"

namespace polypta {

enum class DiagCode {
  Syntax,
  DuplicateMethod,
  DuplicateClass,
  DuplicateField,
  DuplicateParam,
  DuplicateLabel,
  UnknownEvalTarget,
  UnknownInterfaceClass,
  UnknownClass,
  UnknownMethod,
  UnknownField,
  UndeclaredVariable,
  ReservedName,
  ArityMismatch,
  InterfaceMisuse,
  ModuleMisuse,
};

const char* diag_code_name(DiagCode code);

struct Diagnostic {
  DiagCode code;
  std::string message;
  ModuleId module = ModuleId::Host;
  std::string method;  // empty for class-level diagnostics
  StmtId stmt = kNoStmt;
  SourcePos pos;

  std::string to_string() const;
};

struct InterfaceVar {
  std::string var;
  std::string method;  // declaring host method
  std::string cls;     // bridge class

  auto operator<=>(const InterfaceVar&) const = default;
};

using InterfaceVarRegistry = std::set<InterfaceVar>;

/// Every variable assigned by an `iface` statement, with its declaring method
/// and bridge class.
InterfaceVarRegistry interface_vars(const Program& program);

/// Checks every well-formedness invariant; an empty result means the program
/// is valid. Statement ids must already be assigned.
std::vector<Diagnostic> validate(const Program& program);

}  // namespace polypta
