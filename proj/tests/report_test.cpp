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

using nlohmann::json;
using testing::running_example;

constexpr AnalysisConfig kDefault{1, FieldMode::Sensitive};

const json* find_var(const json& result, const std::string& method,
                     const std::string& var) {
  for (const json& e : result.at("var_points_to")) {
    if (e.at("method") == method && e.at("var") == var) return &e;
  }
  return nullptr;
}

TEST(Report, ResultJsonCarriesFinalFacts) {
  auto p = running_example();
  json out = result_to_json(analyze_program(*p.index, kDefault));
  EXPECT_EQ(out.at("schema"), kResultSchema);
  EXPECT_EQ(out.at("config").at("k"), 1);
  EXPECT_EQ(out.at("config").at("field_mode"), "sensitive");
  const json* x = find_var(out, "host::foo", "x");
  ASSERT_NE(x, nullptr);
  EXPECT_EQ(x->at("heap"), json::array({"obj@sec"}));
  EXPECT_EQ(out.at("iterations"), 2);
  ASSERT_EQ(out.at("bridge_graphs").size(), 1u);
  EXPECT_EQ(out.at("bridge_graphs")[0].at("root"), "host::foo");
}

TEST(Report, IdenticalRunsSerializeIdentically) {
  auto a = running_example();
  auto b = running_example();
  std::string first = result_to_json(analyze_program(*a.index, kDefault)).dump(2);
  std::string second =
      result_to_json(analyze_program(*b.index, kDefault)).dump(2);
  EXPECT_EQ(first, second);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto p1 = testing::load_program(generate_program(seed));
    auto p2 = testing::load_program(generate_program(seed));
    EXPECT_EQ(result_to_json(analyze_program(*p1.index, kDefault)).dump(),
              result_to_json(analyze_program(*p2.index, kDefault)).dump());
  }
}

TEST(Report, DotHasKindLabelledEdges) {
  auto p = running_example();
  ModularAnalysisResult r = analyze_program(*p.index, kDefault);
  std::string dot = interlang_to_dot(r.interlang.graph, *p.index);
  EXPECT_NE(dot.find("\"host::foo\" -> \"host::setSecret\" [kind=\"bridge\""),
            std::string::npos);
  EXPECT_NE(dot.find("\"host::foo\" -> \"guest::set\" [kind=\"eval\""),
            std::string::npos);
  EXPECT_NE(
      dot.find("\"guest::set\" -> \"host::setSecret\" [kind=\"guest-to-bridge\""),
      std::string::npos);
}

TEST(Report, StatsAndLeaks) {
  auto p = running_example();
  ModularAnalysisResult r = analyze_program(*p.index, kDefault);
  json stats = stats_to_json(r);
  EXPECT_EQ(stats.at("schema"), kStatsSchema);
  EXPECT_FALSE(stats.contains("millis"));
  EXPECT_EQ(stats.at("iterations").size(), 2u);
  EXPECT_EQ(stats.at("monotonicity_violations"), 0);
  EXPECT_TRUE(stats_to_json(r, 1.5).contains("millis"));

  auto leaks = find_leaks(r, parse_taint_config("sources=Secret\nsinks=leak(0)"));
  json lj = leaks_to_json(leaks, *p.index);
  EXPECT_EQ(lj.at("schema"), kLeakSchema);
  ASSERT_EQ(lj.at("leaks").size(), 1u);
  EXPECT_EQ(lj.at("leaks")[0].at("witness").at("label"), "obj@sec");
}

TEST(Report, ComparisonJson) {
  CorpusComparison cmp = compare_corpus(generate_corpus(42, 5), kDefault);
  json j = comparison_to_json(cmp, kDefault);
  EXPECT_EQ(j.at("schema"), kCompareSchema);
  EXPECT_EQ(j.at("programs"), 5);
}

}  // namespace
}  // namespace polypta
