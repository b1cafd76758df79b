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
#include <vector>

#include "polypta/ast.h"

namespace polypta {

struct CorpusOptions {
  std::size_t max_stmts = 40;
  int levels = 6;  // calls go to strictly deeper levels, so depth <= levels
};

/// A random well-formed loop-free polyglot program: host methods that share
/// bridge objects through interface variables and `eval` guest methods, and
/// guest methods that call bridged methods on interface variables, their
/// aliases and forwarded parameters. Every method sits on a level and only
/// calls methods on deeper levels, so there is no recursion. Method names
/// are unique across both modules. Equal seeds give equal programs.
Program generate_program(std::uint64_t seed, const CorpusOptions& opts = {});

/// Programs for seeds `seed`, `seed + 1`, ...
std::vector<Program> generate_corpus(std::uint64_t seed, std::size_t count,
                                     const CorpusOptions& opts = {});

}  // namespace polypta
