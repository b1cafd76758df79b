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

#include <functional>

#include "test_support.h"

namespace polypta {
namespace {

using testing::load_data;
using testing::load_program;
using testing::load_text;
using testing::method_id;
using testing::running_example;

constexpr AnalysisConfig kDefault{1, FieldMode::Sensitive};

std::set<std::string> observed(const ProgramIndex& index,
                               const ObservedFacts& facts, ModuleId module,
                               std::string_view method, std::string_view var) {
  MethodId id = method_id(index, module, method);
  std::set<std::string> out;
  for (const ObservedBinding& b : facts.bindings) {
    if (b.method == id && b.var == var) out.insert(index.alloc_label(b.site));
  }
  return out;
}

TEST(Interpreter, RunningExample) {
  auto p = running_example();
  const ProgramIndex& idx = *p.index;
  ObservedFacts facts = interpret(idx);
  EXPECT_FALSE(facts.budget_exhausted);
  EXPECT_EQ(observed(idx, facts, ModuleId::Guest, "getAndLeak", "g"),
            std::set<std::string>{"obj@sec"});
  EXPECT_EQ(observed(idx, facts, ModuleId::Host, "foo", "x"),
            std::set<std::string>{"obj@sec"});
  auto call = [&](ModuleId a, const char* from, ModuleId b, const char* to) {
    return std::make_pair(method_id(idx, a, from), method_id(idx, b, to));
  };
  auto has = [&](std::pair<MethodId, MethodId> edge) {
    return std::find(facts.trace.begin(), facts.trace.end(), edge) !=
           facts.trace.end();
  };
  EXPECT_TRUE(has(call(ModuleId::Host, "foo", ModuleId::Guest, "set")));
  EXPECT_TRUE(has(call(ModuleId::Guest, "set", ModuleId::Host, "setSecret")));
  for (const auto& [id, site] : facts.objects) {
    EXPECT_NE(site, kNoStmt) << "object " << id;
  }
}

TEST(Interpreter, EmptyProgram) {
  auto p = load_text("HOST {} GUEST {}");
  ObservedFacts facts = interpret(*p.index);
  EXPECT_TRUE(facts.bindings.empty());
  EXPECT_TRUE(facts.trace.empty());
  EXPECT_TRUE(facts.objects.empty());
}

TEST(Interpreter, BudgetExhaustionKeepsPartialFacts) {
  auto p = running_example();
  ObservedFacts facts = interpret(*p.index, InterpreterLimits{3, 64});
  EXPECT_TRUE(facts.budget_exhausted);
  EXPECT_LE(facts.steps, 3u);
  EXPECT_FALSE(facts.bindings.empty());
}

TEST(Interpreter, BothBranchesAndOneLoopIteration) {
  auto p = load_text(R"poly(HOST {
    main() {
      if (c) { a = new A(); } else { a = new B(); }
      while (c) { w = new A(); }
    }
    class A { }
    class B { }
  } GUEST {})poly");
  ObservedFacts facts = interpret(*p.index);
  EXPECT_EQ(observed(*p.index, facts, ModuleId::Host, "main", "a").size(), 2u);
  EXPECT_EQ(observed(*p.index, facts, ModuleId::Host, "main", "w").size(), 1u);
  EXPECT_EQ(facts.objects.size(), 3u);
}

TEST(Interpreter, ChainedBridges) {
  auto p = load_data("curated/chain3.poly");
  ObservedFacts facts = interpret(*p.index);
  for (const char* m : {"relay", "consume"}) {
    const char* var = std::string_view(m) == "relay" ? "m" : "n";
    EXPECT_EQ(observed(*p.index, facts, ModuleId::Guest, m, var),
              std::set<std::string>{"obj@data"});
  }
}

TEST(Interpreter, Deterministic) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto p = load_program(generate_program(seed));
    EXPECT_EQ(interpret(*p.index), interpret(*p.index)) << seed;
  }
}

TEST(Interpreter, FactsSerializeAsJsonLines) {
  auto p = running_example();
  ObservedFacts facts = interpret(*p.index);
  std::string text = facts_to_jsonl(facts, *p.index);
  std::size_t lines = std::count(text.begin(), text.end(), '\n');
  EXPECT_EQ(lines, facts.bindings.size() + facts.trace.size());
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    EXPECT_TRUE(nlohmann::json::accept(line)) << line;
  }
}

TEST(Monolithic, RunningExample) {
  auto p = running_example();
  MonolithicResult m = monolithic_andersen(*p.index, kDefault);
  CollapsedPointsTo c = collapse(*p.index, m.vars);
  StmtId sec = testing::site_of(*p.index, "obj@sec");
  StmtId iface = testing::site_of(*p.index, "obj@iface");
  EXPECT_EQ(c.at({"host::foo", "x"}), std::set<StmtId>{sec});
  EXPECT_EQ(c.at({"guest::getAndLeak", "g"}), std::set<StmtId>{sec});
  EXPECT_EQ(c.at({"host::foo", "i"}), std::set<StmtId>{iface});
}

TEST(Monolithic, InteropFreeMatchesPreAnalysis) {
  auto p = load_text(R"poly(HOST {
    main() {
      a = new A();
      b = new Box();
      b.f = a;
      c = b.f;
      d = pass(c);
    }
    pass(q) { r = q; return r; }
    class A { }
    class Box { field f; }
  } GUEST {})poly");
  for (int k = 0; k <= 2; ++k) {
    AnalysisConfig cfg{k, FieldMode::Sensitive};
    PreAnalysis pa = analyze_module(*p.index, ModuleId::Host,
                                    host_entrypoints(*p.index), cfg);
    MonolithicResult m = monolithic_andersen(*p.index, cfg);
    EXPECT_EQ(collapse(*p.index, m.vars),
              collapse(*p.index, pa.var_points_to()))
        << "k=" << k;
  }
}

TEST(Monolithic, TwoInstancesStayApart) {
  auto p = load_data("curated/two_instances.poly");
  MonolithicResult m = monolithic_andersen(*p.index, kDefault);
  CollapsedPointsTo c = collapse(*p.index, m.vars);
  EXPECT_EQ(c.at({"guest::getA", "g"}),
            std::set<StmtId>{testing::site_of(*p.index, "obj@secA")});
  EXPECT_EQ(c.at({"guest::getB", "h"}),
            std::set<StmtId>{testing::site_of(*p.index, "obj@secB")});
}

TEST(Monolithic, CoversInterpreterOnCuratedSuite) {
  for (const std::string& name : testing::curated_names()) {
    auto p = load_data("curated/" + name + ".poly");
    CollapsedPointsTo obs = collapse(*p.index, interpret(*p.index));
    CollapsedPointsTo mono =
        collapse(*p.index, monolithic_andersen(*p.index, kDefault).vars);
    EXPECT_TRUE(uncovered(obs, mono).empty()) << name;
  }
}

int call_depth(const Program& program) {
  std::map<std::string, std::set<std::string>> calls;
  auto visit = [&](const MethodDecl& m) {
    for_each_stmt(m.body, [&](const Stmt& s) {
      if (const auto* c = std::get_if<InvokeStmt>(&s.node)) {
        calls[m.name].insert(c->method);
      } else if (const auto* e = std::get_if<EvalStmt>(&s.node)) {
        calls[m.name].insert(e->guest_method);
      }
    });
  };
  for (const ModuleDecl* mod : {&program.host, &program.guest}) {
    for (const MethodDecl& m : mod->methods) visit(m);
    for (const ClassDecl& c : mod->classes) {
      for (const MethodDecl& m : c.methods) visit(m);
    }
  }
  std::map<std::string, int> memo;
  std::function<int(const std::string&, int)> depth =
      [&](const std::string& m, int guard) -> int {
    if (guard > 64) return 1000;  // a cycle
    if (auto it = memo.find(m); it != memo.end()) return it->second;
    int best = 0;
    for (const std::string& callee : calls[m]) {
      best = std::max(best, 1 + depth(callee, guard + 1));
    }
    return memo[m] = best;
  };
  int out = 0;
  for (const auto& [m, _] : calls) out = std::max(out, depth(m, 0));
  return out;
}

TEST(Corpus, ProgramsAreWellFormedAndBounded) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Program program = generate_program(seed);
    EXPECT_TRUE(validate(program).empty()) << seed;
    EXPECT_EQ(program, generate_program(seed));
    StmtId n = number_statements(program);
    EXPECT_LE(n, 40u) << seed;
    EXPECT_LE(call_depth(program), 6) << seed;
    bool loops = false;
    for (const ModuleDecl* mod : {&program.host, &program.guest}) {
      auto check = [&](const MethodDecl& m) {
        for_each_stmt(m.body, [&](const Stmt& s) {
          loops |= std::holds_alternative<WhileStmt>(s.node);
        });
      };
      for (const MethodDecl& m : mod->methods) check(m);
      for (const ClassDecl& c : mod->classes) {
        for (const MethodDecl& m : c.methods) check(m);
      }
    }
    EXPECT_FALSE(loops) << seed;
  }
}

TEST(Corpus, MostProgramsExerciseBridges) {
  std::size_t with_bridges = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto p = load_program(generate_program(seed));
    if (!analyze_program(*p.index, kDefault).interlang.bridges.empty()) {
      ++with_bridges;
    }
  }
  EXPECT_GE(with_bridges, 25u);
}

}  // namespace
}  // namespace polypta
