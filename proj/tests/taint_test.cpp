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
using testing::running_example;

constexpr AnalysisConfig kDefault{1, FieldMode::Sensitive};

TaintConfig secret_to_leak() {
  return parse_taint_config("sources=Secret\nsinks=leak(0)\n");
}

TEST(TaintConfig, ParsesSourcesAndSinks) {
  TaintConfig cfg = parse_taint_config(
      "# comment\nsources = Secret, readPassword()\nsinks=leak(0),send(0, 1)\n"
      "sinks=log\n");
  EXPECT_EQ(cfg.source_classes, std::set<std::string>{"Secret"});
  EXPECT_EQ(cfg.source_methods, std::set<std::string>{"readPassword"});
  EXPECT_EQ(cfg.sinks.at("leak"), std::set<std::size_t>{0});
  EXPECT_EQ(cfg.sinks.at("send"), (std::set<std::size_t>{0, 1}));
  EXPECT_TRUE(cfg.sinks.at("log").empty());
  EXPECT_TRUE(parse_taint_config("").empty());
}

TEST(TaintConfig, RejectsMalformedLines) {
  EXPECT_THROW(parse_taint_config("sources"), std::invalid_argument);
  EXPECT_THROW(parse_taint_config("drains=leak(0)"), std::invalid_argument);
  EXPECT_THROW(parse_taint_config("sinks=leak(x)"), std::invalid_argument);
  EXPECT_THROW(parse_taint_config("sinks=leak(0"), std::invalid_argument);
  EXPECT_THROW(parse_taint_config("sources=read(1)"), std::invalid_argument);
}

TEST(Taint, RunningExampleLeaksOnce) {
  auto p = running_example();
  ModularAnalysisResult r = analyze_program(*p.index, kDefault);
  std::vector<LeakReport> leaks = find_leaks(r, secret_to_leak());
  ASSERT_EQ(leaks.size(), 1u);
  EXPECT_EQ(leaks[0].callee, "leak");
  EXPECT_EQ(leaks[0].arg_var, "g");
  EXPECT_EQ(leaks[0].arg, 0u);
  EXPECT_EQ(p.index->method_label(leaks[0].sink_method), "guest::getAndLeak");
  EXPECT_EQ(p.index->alloc_label(leaks[0].witness.site), "obj@sec");
  EXPECT_NE(leak_to_string(leaks[0], *p.index).find("leak(g)"),
            std::string::npos);
}

TEST(Taint, NoLeakWithoutTheStore) {
  auto p = load_text(R"poly(HOST {
    foo() {
      iface i = new BridgeClass();
      x = eval("getAndLeak()");
    }
    class BridgeClass {
      field secret;
      setSecret(secret) { this.secret = secret; }
      getSecret() { s = this.secret; return s; }
    }
  } GUEST {
    set() { v = new Secret(); i.setSecret(v); }
    getAndLeak() { g = i.getSecret(); leak(g); return g; }
    leak(a) { }
    class Secret { }
  })poly");
  ModularAnalysisResult r = analyze_program(*p.index, kDefault);
  EXPECT_TRUE(find_leaks(r, secret_to_leak()).empty());
  ObservedFacts facts = interpret(*p.index);
  for (const ObservedBinding& b : facts.bindings) {
    EXPECT_NE(b.var, "g") << "getSecret never returns an object";
  }
}

TEST(Taint, EmptyConfigReportsNothing) {
  auto p = running_example();
  ModularAnalysisResult r = analyze_program(*p.index, kDefault);
  EXPECT_TRUE(find_leaks(r, TaintConfig{}).empty());
}

TEST(Taint, PreAnalysisAloneMissesTheLeak) {
  auto p = running_example();
  FixpointOptions opts;
  opts.specialize = false;
  ModularAnalysisResult r = analyze_program(*p.index, kDefault, opts);
  EXPECT_TRUE(find_leaks(r, secret_to_leak()).empty());
}

TEST(Taint, UnknownNamesAreErrors) {
  auto p = running_example();
  ModularAnalysisResult r = analyze_program(*p.index, kDefault);
  EXPECT_THROW(find_leaks(r, parse_taint_config("sources=Missing")),
               TaintResolutionError);
  EXPECT_THROW(find_leaks(r, parse_taint_config("sources=nope()")),
               TaintResolutionError);
  EXPECT_THROW(find_leaks(r, parse_taint_config("sinks=nope(0)")),
               TaintResolutionError);
}

TEST(Taint, SinkPositionsFilterArguments) {
  auto p = load_text(R"poly(HOST {
    main() {
      s = readPassword();
      o = new Plain();
      send(o, s);
      send(s, o);
    }
    readPassword() { t = new Plain(); return t; }
    send(a, b) { }
    class Plain { }
  } GUEST {})poly");
  ModularAnalysisResult r = analyze_program(*p.index, kDefault);
  auto leaks = find_leaks(
      r, parse_taint_config("sources=readPassword()\nsinks=send(1)"));
  ASSERT_EQ(leaks.size(), 1u);
  EXPECT_EQ(leaks[0].arg, 1u);
  EXPECT_EQ(leaks[0].arg_var, "s");
  EXPECT_EQ(find_leaks(r, parse_taint_config(
                              "sources=readPassword()\nsinks=send"))
                .size(),
            2u);
}

TEST(Taint, TaintFollowsObjectsThroughFields) {
  auto p = load_text(R"poly(HOST {
    main() {
      box = new Box();
      k = new Key();
      box.item = k;
      out = box.item;
      publish(out);
    }
    publish(v) { }
    class Box { field item; }
    class Key { }
  } GUEST {})poly");
  ModularAnalysisResult r = analyze_program(*p.index, kDefault);
  EXPECT_EQ(tainted_objects(r, parse_taint_config("sources=Key")).size(), 1u);
  EXPECT_EQ(find_leaks(r, parse_taint_config("sources=Key\nsinks=publish(0)"))
                .size(),
            1u);
}

}  // namespace
}  // namespace polypta
