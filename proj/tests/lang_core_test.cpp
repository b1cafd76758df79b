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

#include <gtest/gtest.h>

#include "test_support.h"

namespace polypta {
namespace {

using testing::load_text;
using testing::method_id;
using testing::running_example;

std::set<std::string> method_names(const ModuleDecl& module) {
  std::set<std::string> out;
  for (const MethodDecl& m : module.methods) out.insert(m.name);
  for (const ClassDecl& c : module.classes) {
    for (const MethodDecl& m : c.methods) out.insert(m.name);
  }
  return out;
}

std::vector<DiagCode> codes(const std::vector<Diagnostic>& diags) {
  std::vector<DiagCode> out;
  for (const Diagnostic& d : diags) out.push_back(d.code);
  return out;
}

TEST(Parse, RunningExampleMethods) {
  auto p = running_example();
  EXPECT_EQ(method_names(p.program->host),
            (std::set<std::string>{"foo", "setSecret", "getSecret"}));
  EXPECT_EQ(method_names(p.program->guest),
            (std::set<std::string>{"set", "getAndLeak", "leak"}));
}

TEST(Parse, EmptyModules) {
  Program p = parse("HOST {} GUEST {}");
  EXPECT_TRUE(method_names(p.host).empty());
  EXPECT_TRUE(method_names(p.guest).empty());
}

TEST(Parse, UnknownEvalTarget) {
  try {
    parse("HOST { foo() { eval(\"missing()\"); } } GUEST {}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), DiagCode::UnknownEvalTarget);
    EXPECT_NE(std::string(e.what()).find("unknown guest method"),
              std::string::npos);
  }
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  try {
    parse("HOST {\n  foo() {\n    x = ;\n  }\n} GUEST {}");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.code(), DiagCode::Syntax);
    EXPECT_EQ(e.pos().line, 3);
  }
}

TEST(Parse, AllocationLabelsFromComments) {
  auto p = running_example();
  EXPECT_EQ(p.index->alloc_label(testing::site_of(*p.index, "obj@iface")),
            "obj@iface");
  EXPECT_EQ(p.index->alloc_class(testing::site_of(*p.index, "obj@sec")),
            "Secret");
}

TEST(Print, RoundTripsRunningExample) {
  auto p = running_example();
  Program again = parse(print(*p.program));
  EXPECT_EQ(again, *p.program);
}

TEST(Validate, RunningExampleIsClean) {
  auto p = running_example();
  EXPECT_TRUE(validate(*p.program).empty());
}

TEST(Validate, StoreToUndeclaredField) {
  Program p = parse(R"poly(HOST {
    foo() { b = new Box(); b.nope = b; }
    class Box { field item; }
  } GUEST {})poly");
  EXPECT_EQ(codes(validate(p)), std::vector<DiagCode>{DiagCode::UnknownField});
}

TEST(Validate, ReservedReturnVariable) {
  Program p = parse(R"poly(HOST {
    foo() { $ret = new Box(); }
    class Box { }
  } GUEST {})poly");
  EXPECT_EQ(codes(validate(p)), std::vector<DiagCode>{DiagCode::ReservedName});
}

TEST(Validate, UndeclaredVariable) {
  Program p = parse("HOST { foo() { x = y; } } GUEST {}");
  EXPECT_EQ(codes(validate(p)),
            std::vector<DiagCode>{DiagCode::UndeclaredVariable});
}

TEST(Validate, ArityMismatch) {
  Program p = parse("HOST { foo() { bar(); } bar(a) { } } GUEST {}");
  EXPECT_EQ(codes(validate(p)), std::vector<DiagCode>{DiagCode::ArityMismatch});
}

TEST(InterfaceVars, RunningExample) {
  auto p = running_example();
  EXPECT_EQ(interface_vars(*p.program),
            (InterfaceVarRegistry{{"i", "foo", "BridgeClass"}}));
}

TEST(InterfaceVars, NoneWithoutInterfaceAllocation) {
  Program p = parse("HOST { foo() { b = new Box(); } class Box { } } GUEST {}");
  EXPECT_TRUE(interface_vars(p).empty());
}

TEST(InterfaceVars, TwoMethods) {
  Program p = parse(R"poly(HOST {
    first() { iface a = new Box(); }
    second() { iface b = new Box(); }
    class Box { }
  } GUEST {})poly");
  InterfaceVarRegistry expected{{"a", "first", "Box"}, {"b", "second", "Box"}};
  EXPECT_EQ(interface_vars(p), expected);
}

TEST(Numbering, HostBeforeGuestInPreOrder) {
  auto p = running_example();
  const ProgramIndex& idx = *p.index;
  StmtId last_host = 0;
  StmtId first_guest = kNoStmt;
  for (StmtId s = 0; s < idx.stmt_count(); ++s) {
    EXPECT_EQ(idx.site(s).stmt->id, s);
    ModuleId m = idx.method(idx.site(s).method).module;
    if (m == ModuleId::Host) last_host = s;
    if (m == ModuleId::Guest) first_guest = std::min(first_guest, s);
  }
  EXPECT_LT(last_host, first_guest);
}

TEST(Index, ReturnVariableOnlyInReturningMethods) {
  auto p = running_example();
  auto defs = [&](std::string_view name, ModuleId m) {
    const MethodInfo& info = p.index->method(method_id(*p.index, m, name));
    return std::set<std::string>(info.defs.begin(), info.defs.end());
  };
  EXPECT_TRUE(defs("getSecret", ModuleId::Host).count(kReturnVar));
  EXPECT_FALSE(defs("setSecret", ModuleId::Host).count(kReturnVar));
  EXPECT_FALSE(defs("leak", ModuleId::Guest).count(kReturnVar));
}

TEST(Index, BridgeMethodsAndInterfaceRefs) {
  auto p = running_example();
  const ProgramIndex& idx = *p.index;
  std::set<MethodId> expected{method_id(idx, ModuleId::Host, "setSecret"),
                              method_id(idx, ModuleId::Host, "getSecret")};
  EXPECT_EQ(idx.bridge_methods(), expected);
  EXPECT_TRUE(idx.is_interface_ref(method_id(idx, ModuleId::Guest, "set"), "i"));
  EXPECT_FALSE(idx.is_interface_ref(method_id(idx, ModuleId::Guest, "set"), "v"));
}

TEST(Index, GuestLocalShadowsInterfaceVariable) {
  auto p = load_text(R"poly(HOST {
    foo() { iface i = new Box(); eval("g()"); }
    class Box { }
  } GUEST {
    g() { i = new Local(); }
    class Local { }
  })poly");
  EXPECT_FALSE(p.index->is_interface_ref(
      method_id(*p.index, ModuleId::Guest, "g"), "i"));
}

TEST(Context, PushKeepsLastK) {
  Context c;
  EXPECT_TRUE(c.push(4, 0).empty());
  Context one = c.push(4, 1).push(5, 1);
  EXPECT_EQ(one.sites(), std::vector<SiteCode>{5});
  Context two = c.push(4, 2).push(5, 2).push(6, 2);
  EXPECT_EQ(two.sites(), (std::vector<SiteCode>{5, 6}));
}

TEST(Context, ConfigChecks) {
  EXPECT_EQ(parse_field_mode("based"), FieldMode::Based);
  EXPECT_THROW(parse_field_mode("deep"), std::invalid_argument);
  EXPECT_THROW(check_config(AnalysisConfig{3, FieldMode::Sensitive}),
               std::invalid_argument);
  EXPECT_NO_THROW(check_config(AnalysisConfig{2, FieldMode::Insensitive}));
}

TEST(Context, FieldKeysFollowMode) {
  HeapObject o{3, Context{}};
  EXPECT_EQ(field_key(FieldMode::Sensitive, o, "f"), (FieldKey{o, "f"}));
  EXPECT_EQ(field_key(FieldMode::Based, o, "f"), (FieldKey{std::nullopt, "f"}));
  EXPECT_EQ(field_key(FieldMode::Insensitive, o, "f"), (FieldKey{o, ""}));
}

}  // namespace
}  // namespace polypta
