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

#include "polypta/taint.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <tuple>

namespace polypta {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Splits on commas outside parentheses.
std::vector<std::string> split_items(std::string_view s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ',' && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
      continue;
    }
    cur += c;
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

bool is_identifier(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

}  // namespace

TaintConfig parse_taint_config(std::string_view text) {
  TaintConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("taint config line " +
                                  std::to_string(lineno) + ": expected key=value");
    }
    std::string key = trim(std::string_view(line).substr(0, eq));
    auto items = split_items(std::string_view(line).substr(eq + 1));
    for (const std::string& item : items) {
      auto open = item.find('(');
      std::string name = trim(item.substr(0, open));
      if (!is_identifier(name)) {
        throw std::invalid_argument("taint config line " +
                                    std::to_string(lineno) + ": bad name '" +
                                    item + "'");
      }
      std::string inner;
      if (open != std::string::npos) {
        if (item.back() != ')') {
          throw std::invalid_argument("taint config line " +
                                      std::to_string(lineno) +
                                      ": unbalanced '('");
        }
        inner = trim(item.substr(open + 1, item.size() - open - 2));
      }
      if (key == "sources") {
        if (open == std::string::npos) {
          cfg.source_classes.insert(name);
        } else if (inner.empty()) {
          cfg.source_methods.insert(name);
        } else {
          throw std::invalid_argument("source method '" + name +
                                      "' takes no positions");
        }
      } else if (key == "sinks") {
        auto& positions = cfg.sinks[name];
        std::istringstream ps(inner);
        std::string p;
        while (std::getline(ps, p, ',')) {
          p = trim(p);
          if (p.empty()) continue;
          if (!std::all_of(p.begin(), p.end(), ::isdigit)) {
            throw std::invalid_argument("sink '" + name +
                                        "': bad argument position '" + p + "'");
          }
          positions.insert(std::stoul(p));
        }
      } else {
        throw std::invalid_argument("taint config line " +
                                    std::to_string(lineno) + ": unknown key '" +
                                    key + "'");
      }
    }
  }
  return cfg;
}

TaintConfig load_taint_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_taint_config(buf.str());
}

HeapSet tainted_objects(const ModularAnalysisResult& result,
                        const TaintConfig& cfg) {
  const ProgramIndex& index = result.index();
  HeapSet out;
  for (const PreAnalysis* pa : {&result.host, &result.guest}) {
    for (const auto& [key, pts] : pa->var_points_to()) {
      for (const HeapObject& h : pts) {
        if (cfg.source_classes.count(index.alloc_class(h.site))) out.insert(h);
      }
      if (key.method != kGlobalScope && key.var == kReturnVar &&
          cfg.source_methods.count(index.method(key.method).decl->name)) {
        merge_into(out, pts);
      }
    }
    for (const auto& [key, pts] : pa->fld_points_to()) {
      for (const HeapObject& h : pts) {
        if (cfg.source_classes.count(index.alloc_class(h.site))) out.insert(h);
      }
    }
  }
  return out;
}

std::vector<LeakReport> find_leaks(const ModularAnalysisResult& result,
                                   const TaintConfig& cfg) {
  const ProgramIndex& index = result.index();
  auto method_exists = [&](const std::string& name) {
    return index.find_method(ModuleId::Host, name) ||
           index.find_method(ModuleId::Guest, name);
  };
  for (const std::string& c : cfg.source_classes) {
    if (index.find_class(c) == nullptr) {
      throw TaintResolutionError("unknown source class '" + c + "'");
    }
  }
  for (const std::string& m : cfg.source_methods) {
    if (!method_exists(m)) {
      throw TaintResolutionError("unknown source method '" + m + "'");
    }
  }
  for (const auto& [m, positions] : cfg.sinks) {
    if (!method_exists(m)) {
      throw TaintResolutionError("unknown sink method '" + m + "'");
    }
  }

  const HeapSet tainted = tainted_objects(result, cfg);
  std::vector<LeakReport> leaks;
  for (MethodId m = 0; m < index.method_count(); ++m) {
    const MethodInfo& info = index.method(m);
    const PreAnalysis& pa = result.module(info.module);
    if (pa.contexts_of(m).empty()) continue;
    for (const Stmt* s : info.stmts) {
      const auto* call = std::get_if<InvokeStmt>(&s->node);
      if (call == nullptr) continue;
      auto sink = cfg.sinks.find(call->method);
      if (sink == cfg.sinks.end()) continue;
      for (std::size_t j = 0; j < call->args.size(); ++j) {
        if (!sink->second.empty() && !sink->second.count(j)) continue;
        for (const HeapObject& h : pa.points_to_collapsed(m, call->args[j])) {
          if (!tainted.count(h)) continue;
          leaks.push_back(LeakReport{s->id, m, call->method, j, call->args[j],
                                     h, h.site});
        }
      }
    }
  }
  std::sort(leaks.begin(), leaks.end(),
            [](const LeakReport& a, const LeakReport& b) {
              return std::tie(a.source_site, a.sink_site, a.arg, a.witness) <
                     std::tie(b.source_site, b.sink_site, b.arg, b.witness);
            });
  return leaks;
}

std::string leak_to_string(const LeakReport& leak, const ProgramIndex& index) {
  std::ostringstream out;
  out << "leak: " << index.method_label(leak.sink_method) << " calls "
      << leak.callee << "(" << leak.arg_var << ") at arg " << leak.arg
      << " <- " << index.alloc_label(leak.witness.site) << " "
      << index.context_label(leak.witness.ctx);
  return out.str();
}

}  // namespace polypta
