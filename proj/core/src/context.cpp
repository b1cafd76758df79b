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

#include "polypta/context.h"

#include <stdexcept>

namespace polypta {

Context Context::push(SiteCode site, int k) const {
  if (k <= 0) return Context();
  std::vector<SiteCode> next = sites_;
  next.push_back(site);
  if (next.size() > static_cast<std::size_t>(k)) {
    next.erase(next.begin(), next.end() - k);
  }
  return Context(std::move(next));
}

bool merge_into(HeapSet& into, const HeapSet& from) {
  std::size_t before = into.size();
  into.insert(from.begin(), from.end());
  return into.size() != before;
}

const char* field_mode_name(FieldMode mode) {
  switch (mode) {
    case FieldMode::Sensitive: return "sensitive";
    case FieldMode::Based: return "based";
    case FieldMode::Insensitive: return "insensitive";
  }
  return "?";
}

FieldMode parse_field_mode(const std::string& name) {
  if (name == "sensitive") return FieldMode::Sensitive;
  if (name == "based") return FieldMode::Based;
  if (name == "insensitive") return FieldMode::Insensitive;
  throw std::invalid_argument("unknown field mode '" + name +
                              "' (expected sensitive, based or insensitive)");
}

void check_config(const AnalysisConfig& cfg) {
  if (cfg.k < 0 || cfg.k > 2) {
    throw std::invalid_argument("context bound k must be 0, 1 or 2");
  }
}

}  // namespace polypta
