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

#include "test_support.h"

#include <algorithm>
#include <filesystem>
#include <stdexcept>

namespace polypta::testing {

Loaded load_program(Program program) {
  Loaded out;
  out.program = std::make_unique<Program>(std::move(program));
  number_statements(*out.program);
  out.index = std::make_unique<ProgramIndex>(*out.program);
  return out;
}

Loaded load_text(std::string_view text) { return load_program(parse(text)); }

std::string data_path(const std::string& relative) {
  return std::string(POLYPTA_TEST_DATA) + "/" + relative;
}

Loaded load_data(const std::string& relative) {
  return load_program(parse_file(data_path(relative)));
}

Loaded running_example() { return load_data("curated/running_example.poly"); }

std::vector<std::string> curated_names() {
  std::vector<std::string> names;
  for (const auto& entry :
       std::filesystem::directory_iterator(data_path("curated"))) {
    if (entry.path().extension() != ".poly") continue;
    std::string name = entry.path().stem().string();
    if (name != "running_example") names.push_back(name);
  }
  std::sort(names.begin(), names.end());
  names.insert(names.begin(), "running_example");
  return names;
}

MethodId method_id(const ProgramIndex& index, ModuleId module,
                   std::string_view name) {
  auto id = index.find_method(module, name);
  if (!id) throw std::invalid_argument("no method " + std::string(name));
  return *id;
}

std::set<std::string> labels(const ProgramIndex& index, const HeapSet& heap) {
  std::set<std::string> out;
  for (const HeapObject& o : heap) out.insert(index.alloc_label(o.site));
  return out;
}

std::set<std::string> pts(const PreAnalysis& pa, std::string_view method,
                          std::string_view var) {
  MethodId id = method_id(pa.index(), pa.module(), method);
  return labels(pa.index(), pa.points_to_collapsed(id, var));
}

StmtId site_of(const ProgramIndex& index, std::string_view label) {
  for (StmtId s = 0; s < index.stmt_count(); ++s) {
    const Stmt* stmt = index.site(s).stmt;
    if (std::holds_alternative<NewStmt>(stmt->node) ||
        std::holds_alternative<InterfaceNewStmt>(stmt->node)) {
      if (index.alloc_label(s) == label) return s;
    }
  }
  throw std::invalid_argument("no allocation labelled " + std::string(label));
}

AccessPath random_path(std::mt19937_64& rng, std::size_t vars) {
  std::size_t v = rng() % vars;
  std::string name = "v" + std::to_string(v);
  switch (rng() % 3) {
    case 0: return AccessPath::local(name);
    case 1: return AccessPath::local(name, "f");
    default: return AccessPath::interface(name, "g");
  }
}

ConstraintSet random_constraint_system(std::mt19937_64& rng) {
  // A pool of distinct paths: v0, v0.f, i0.g, v1, v1.f, ...
  const std::size_t n = 1 + rng() % 50;
  std::vector<AccessPath> pool;
  for (std::size_t i = 0; i < n; ++i) {
    std::string name = "v" + std::to_string(i / 3);
    switch (i % 3) {
      case 0: pool.push_back(AccessPath::local(name)); break;
      case 1: pool.push_back(AccessPath::local(name, "f")); break;
      default: pool.push_back(AccessPath::interface(name, "g")); break;
    }
  }
  const std::size_t count = rng() % (3 * n + 1);
  ConstraintSet cs;
  for (std::size_t i = 0; i < count; ++i) {
    if (rng() % 4 == 0) {
      HeapSet heap;
      for (std::size_t j = rng() % 3; j > 0; --j) {
        heap.insert(HeapObject{static_cast<StmtId>(rng() % 8), Context{}});
      }
      cs.insert(MemberConstraint{heap, pool[rng() % n]});
    } else {
      cs.insert(SubsetConstraint{pool[rng() % n], pool[rng() % n]});
    }
  }
  return cs;
}

FunctionSummary naive_solve(const ConstraintSet& cs) {
  FunctionSummary out;
  for (const Constraint& c : cs) {
    if (const auto* m = std::get_if<MemberConstraint>(&c)) {
      out[m->path];
    } else {
      const auto& s = std::get<SubsetConstraint>(c);
      out[s.from];
      out[s.to];
    }
  }
  for (bool changed = true; changed;) {
    changed = false;
    for (const Constraint& c : cs) {
      if (const auto* m = std::get_if<MemberConstraint>(&c)) {
        auto& slot = out[m->path];
        if (!slot) {
          slot.emplace();
          changed = true;
        }
        changed |= merge_into(*slot, m->heap);
      } else {
        const auto& s = std::get<SubsetConstraint>(c);
        if (!out[s.from]) continue;
        HeapSet from = *out[s.from];
        auto& slot = out[s.to];
        if (!slot) {
          slot.emplace();
          changed = true;
        }
        changed |= merge_into(*slot, from);
      }
    }
  }
  return out;
}

}  // namespace polypta::testing
