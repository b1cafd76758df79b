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

#include <benchmark/benchmark.h>

#include <random>

#include "polypta/polypta.h"

namespace polypta {
namespace {

struct Indexed {
  explicit Indexed(Program p) : program(std::move(p)) {
    number_statements(program);
    index = std::make_unique<ProgramIndex>(program);
  }
  Program program;
  std::unique_ptr<ProgramIndex> index;
};

std::vector<std::unique_ptr<Indexed>> indexed_corpus(std::size_t count) {
  std::vector<std::unique_ptr<Indexed>> out;
  for (Program& p : generate_corpus(1, count)) {
    out.push_back(std::make_unique<Indexed>(std::move(p)));
  }
  return out;
}

void BM_RunningExample(benchmark::State& state) {
  Indexed p(parse_file(POLYPTA_SAMPLE));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        analyze_program(*p.index, AnalysisConfig{1, FieldMode::Sensitive}));
  }
}
BENCHMARK(BM_RunningExample);

// Whole modular pipeline over 100 generated programs, per k.
void BM_FixpointCorpus(benchmark::State& state) {
  auto corpus = indexed_corpus(100);
  AnalysisConfig cfg{static_cast<int>(state.range(0)), FieldMode::Sensitive};
  for (auto _ : state) {
    for (const auto& p : corpus) {
      benchmark::DoNotOptimize(analyze_program(*p->index, cfg));
    }
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_FixpointCorpus)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_MonolithicCorpus(benchmark::State& state) {
  auto corpus = indexed_corpus(100);
  AnalysisConfig cfg{static_cast<int>(state.range(0)), FieldMode::Sensitive};
  for (auto _ : state) {
    for (const auto& p : corpus) {
      benchmark::DoNotOptimize(monolithic_andersen(*p->index, cfg));
    }
  }
  state.SetItemsProcessed(state.iterations() * 100);
}
BENCHMARK(BM_MonolithicCorpus)->Arg(0)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

// A chain of copies plus random extra edges over `n` access paths.
ConstraintSet constraint_system(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  ConstraintSet cs;
  auto path = [](std::size_t i) { return AccessPath::local("v" + std::to_string(i)); };
  for (std::size_t i = 0; i < n; i += 8) {
    cs.insert(MemberConstraint{
        HeapSet{HeapObject{static_cast<StmtId>(i), Context{}}}, path(i)});
  }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    cs.insert(SubsetConstraint{path(i), path(i + 1)});
  }
  for (std::size_t i = 0; i < 2 * n; ++i) {
    cs.insert(SubsetConstraint{path(rng() % n), path(rng() % n)});
  }
  return cs;
}

void BM_CubicSolve(benchmark::State& state) {
  ConstraintSet cs = constraint_system(static_cast<std::size_t>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(cubic_solve(cs));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_CubicSolve)->RangeMultiplier(4)->Range(16, 1024)->Complexity();

void BM_Interpret(benchmark::State& state) {
  auto corpus = indexed_corpus(100);
  for (auto _ : state) {
    for (const auto& p : corpus) benchmark::DoNotOptimize(interpret(*p->index));
  }
}
BENCHMARK(BM_Interpret)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace polypta

BENCHMARK_MAIN();
