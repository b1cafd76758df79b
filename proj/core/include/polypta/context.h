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

#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "polypta/ast.h"

namespace polypta {

/// A call-site code: a statement id, or (for values >= the program's
/// statement count) the synthetic entry site of a method.
using SiteCode = std::uint32_t;

/// A k-limited call string: the most recent call sites, oldest first.
class Context {
 public:
  Context() = default;
  explicit Context(std::vector<SiteCode> sites) : sites_(std::move(sites)) {}

  /// Appends `site` and keeps the last `k` elements.
  Context push(SiteCode site, int k) const;

  const std::vector<SiteCode>& sites() const { return sites_; }
  bool empty() const { return sites_.empty(); }
  std::size_t size() const { return sites_.size(); }

  auto operator<=>(const Context&) const = default;
  bool operator==(const Context&) const = default;

 private:
  std::vector<SiteCode> sites_;
};

/// Abstract object: allocation site qualified by the allocating context.
struct HeapObject {
  StmtId site = kNoStmt;
  Context ctx;

  auto operator<=>(const HeapObject&) const = default;
  bool operator==(const HeapObject&) const = default;
};

using HeapSet = std::set<HeapObject>;

/// Inserts every element of `from` into `into`; returns true when `into` grew.
bool merge_into(HeapSet& into, const HeapSet& from);

enum class FieldMode { Sensitive, Based, Insensitive };

const char* field_mode_name(FieldMode mode);
FieldMode parse_field_mode(const std::string& name);

struct AnalysisConfig {
  int k = 1;  // call-string bound, 0..2
  FieldMode field_mode = FieldMode::Sensitive;
};

void check_config(const AnalysisConfig& cfg);

}  // namespace polypta
