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

#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "polypta/fixpoint.h"

namespace polypta {

/// A source or sink name that the program does not define.
class TaintResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TaintConfig {
  std::set<std::string> source_classes;  // allocations are tainted
  std::set<std::string> source_methods;  // returned objects are tainted
  // Sink method -> tainted argument positions; empty means every argument.
  std::map<std::string, std::set<std::size_t>> sinks;

  bool empty() const {
    return source_classes.empty() && source_methods.empty() && sinks.empty();
  }
};

/// Parses `key=value` lines:
///   sources=Secret,readPassword()
///   sinks=leak(0),send(0,1)
/// Throws std::invalid_argument on malformed input.
TaintConfig parse_taint_config(std::string_view text);
TaintConfig load_taint_config(const std::filesystem::path& path);

struct LeakReport {
  StmtId sink_site = kNoStmt;
  MethodId sink_method = 0;  // method containing the sink call
  std::string callee;
  std::size_t arg = 0;
  std::string arg_var;
  HeapObject witness;
  StmtId source_site = kNoStmt;

  bool operator==(const LeakReport&) const = default;
};

/// Objects labelled tainted by `cfg` in `result`.
HeapSet tainted_objects(const ModularAnalysisResult& result,
                        const TaintConfig& cfg);

/// One report per (sink call, argument, tainted witness), ordered by source
/// site, then sink site, argument and witness. Throws TaintResolutionError
/// for names the program does not define.
std::vector<LeakReport> find_leaks(const ModularAnalysisResult& result,
                                   const TaintConfig& cfg);

std::string leak_to_string(const LeakReport& leak, const ProgramIndex& index);

}  // namespace polypta
