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

#include <stdexcept>
#include <string>
#include <string_view>

#include "polypta/ast.h"
#include "polypta/validate.h"

namespace polypta {

class ParseError : public std::runtime_error {
 public:
  ParseError(DiagCode code, const std::string& message, SourcePos pos);

  DiagCode code() const { return code_; }
  SourcePos pos() const { return pos_; }

 private:
  DiagCode code_;
  SourcePos pos_;
};

/// Parses a `.poly` document. Statement ids are numbered on success.
///
/// Throws ParseError on syntax errors and on the structural errors that make a
/// document meaningless: duplicate methods, `eval` of an unknown guest method
/// and interface variables of unknown classes. The remaining invariants are
/// reported by validate().
Program parse(std::string_view text);

Program parse_file(const std::string& path);

}  // namespace polypta
