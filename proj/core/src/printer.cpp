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

#include "polypta/printer.h"

#include <sstream>

namespace polypta {
namespace {

class Printer {
 public:
  std::string run(const Program& p) {
    out_ << "HOST {\n";
    module(p.host);
    out_ << "}\n\nGUEST {\n";
    module(p.guest);
    out_ << "}\n";
    return out_.str();
  }

 private:
  void indent(int depth) {
    for (int i = 0; i < depth; ++i) out_ << "  ";
  }

  void module(const ModuleDecl& m) {
    bool first = true;
    for (const MethodDecl& method : m.methods) {
      if (!first) out_ << '\n';
      first = false;
      this->method(method, 1);
    }
    for (const ClassDecl& c : m.classes) {
      if (!first) out_ << '\n';
      first = false;
      indent(1);
      out_ << "class " << c.name << " {\n";
      if (!c.fields.empty()) {
        indent(2);
        out_ << "field ";
        for (std::size_t i = 0; i < c.fields.size(); ++i) {
          out_ << (i ? ", " : "") << c.fields[i];
        }
        out_ << ";\n";
      }
      for (const MethodDecl& method : c.methods) this->method(method, 2);
      indent(1);
      out_ << "}\n";
    }
  }

  static std::string join(const std::vector<std::string>& xs) {
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i];
    return s;
  }

  void method(const MethodDecl& m, int depth) {
    indent(depth);
    out_ << m.name << "(" << join(m.params) << ") {\n";
    block(m.body, depth + 1);
    indent(depth);
    out_ << "}\n";
  }

  void block(const Block& b, int depth) {
    for (const Stmt& s : b) stmt(s, depth);
  }

  static std::string label(const std::optional<std::string>& l) {
    return l ? "  # " + *l : "";
  }

  void stmt(const Stmt& s, int depth) {
    indent(depth);
    std::visit(
        [&](const auto& st) {
          using T = std::decay_t<decltype(st)>;
          if constexpr (std::is_same_v<T, NewStmt>) {
            out_ << st.target << " = new " << st.cls << "();" << label(st.label);
          } else if constexpr (std::is_same_v<T, InterfaceNewStmt>) {
            out_ << "iface " << st.target << " = new " << st.cls << "();"
                 << label(st.label);
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            out_ << st.target << " = " << st.source << ";";
          } else if constexpr (std::is_same_v<T, LoadStmt>) {
            out_ << st.target << " = " << st.base << "." << st.field << ";";
          } else if constexpr (std::is_same_v<T, StoreStmt>) {
            out_ << st.base << "." << st.field << " = " << st.source << ";";
          } else if constexpr (std::is_same_v<T, InvokeStmt>) {
            if (st.target) out_ << *st.target << " = ";
            if (st.receiver) out_ << *st.receiver << ".";
            out_ << st.method << "(" << join(st.args) << ");";
          } else if constexpr (std::is_same_v<T, EvalStmt>) {
            if (st.target) out_ << *st.target << " = ";
            out_ << "eval(\"" << st.guest_method << "()\");";
          } else if constexpr (std::is_same_v<T, IfStmt>) {
            out_ << "if (" << st.cond << ") {\n";
            block(st.then_body, depth + 1);
            indent(depth);
            out_ << "}";
            if (st.else_body) {
              out_ << " else {\n";
              block(*st.else_body, depth + 1);
              indent(depth);
              out_ << "}";
            }
          } else if constexpr (std::is_same_v<T, WhileStmt>) {
            out_ << "while (" << st.cond << ") {\n";
            block(st.body, depth + 1);
            indent(depth);
            out_ << "}";
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            out_ << "return " << st.source << ";";
          }
        },
        s.node);
    out_ << '\n';
  }

  std::ostringstream out_;
};

}  // namespace

std::string print(const Program& program) { return Printer().run(program); }

}  // namespace polypta
