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

// polypta: modular points-to analysis for host/guest programs.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "polypta/polypta.h"

namespace fs = std::filesystem;
using namespace polypta;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInvariant = 2;
constexpr int kExitLeaks = 3;

struct RunConfig {
  std::string input;
  int k = 1;
  std::string field_mode = "sensitive";
  std::string emit = "both";
  std::string taint_config;
  bool no_specialization = false;
  bool compare_oracle = false;
  std::size_t iter_cap = 100;
  std::uint64_t seed = 42;
  std::size_t count = 200;
  std::string out_dir = ".";
};

AnalysisConfig analysis_config(const RunConfig& rc) {
  AnalysisConfig cfg;
  cfg.k = rc.k;
  cfg.field_mode = parse_field_mode(rc.field_mode);
  check_config(cfg);
  return cfg;
}

FixpointOptions fixpoint_options(const RunConfig& rc) {
  FixpointOptions opts;
  opts.iteration_cap = rc.iter_cap;
  opts.specialize = !rc.no_specialization;
  return opts;
}

// Parses and validates; prints diagnostics and returns nullopt on failure.
std::optional<Program> load(const std::string& path) {
  Program p;
  try {
    p = parse_file(path);
  } catch (const ParseError& e) {
    std::cerr << path << ":" << e.pos().line << ":" << e.pos().column
              << ": error: " << e.what() << "\n";
    return std::nullopt;
  }
  auto diags = validate(p);
  for (const Diagnostic& d : diags) {
    std::cerr << path << ": " << d.to_string() << "\n";
  }
  if (!diags.empty()) return std::nullopt;
  return p;
}

void write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

void print_comparison(const CorpusComparison& c) {
  std::cout << "programs: " << c.programs << "\n"
            << "soundness pass rate: " << c.sound_programs << "/" << c.programs
            << "\n"
            << "observed facts: " << c.observed_facts
            << ", uncovered: " << c.uncovered_facts << "\n"
            << "equal to monolithic: " << c.equal_to_monolithic << "\n"
            << "precision-loss programs: " << c.precision_loss_programs
            << " (extra facts " << c.extra_facts << ")\n"
            << "programs missing monolithic facts: " << c.missing_vs_monolithic
            << "\n";
  for (const std::string& n : c.notes) std::cout << "  " << n << "\n";
}

int cmd_analyze(const RunConfig& rc) {
  auto program = load(rc.input);
  if (!program) return kExitInput;
  const AnalysisConfig cfg = analysis_config(rc);
  ProgramIndex index(*program);

  auto start = std::chrono::steady_clock::now();
  ModularAnalysisResult result = analyze_program(index, cfg, fixpoint_options(rc));
  double millis = std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - start)
                      .count();

  const fs::path out(rc.out_dir);
  if (rc.emit == "json" || rc.emit == "both") {
    write_file(out / "result.json", result_to_json(result).dump(2) + "\n");
  }
  if (rc.emit == "dot" || rc.emit == "both") {
    write_file(out / "interlang.dot",
               interlang_to_dot(result.interlang.graph, index));
  }
  write_file(out / "stats.json", stats_to_json(result, millis).dump(2) + "\n");
  std::cout << "iterations: " << result.iterations.size() << "\n";

  if (rc.compare_oracle) {
    CorpusComparison c = compare_corpus({*program}, cfg, fixpoint_options(rc));
    write_file(out / "compare.json", comparison_to_json(c, cfg).dump(2) + "\n");
    print_comparison(c);
  }
  return kExitOk;
}

int cmd_taint(const RunConfig& rc) {
  auto program = load(rc.input);
  if (!program) return kExitInput;
  TaintConfig tc;
  try {
    tc = load_taint_config(rc.taint_config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  ProgramIndex index(*program);
  ModularAnalysisResult result =
      analyze_program(index, analysis_config(rc), fixpoint_options(rc));
  std::vector<LeakReport> leaks;
  try {
    leaks = find_leaks(result, tc);
  } catch (const TaintResolutionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  for (const LeakReport& l : leaks) std::cout << leak_to_string(l, index) << "\n";
  write_file(fs::path(rc.out_dir) / "leaks.json",
             leaks_to_json(leaks, index).dump(2) + "\n");
  return leaks.empty() ? kExitOk : kExitLeaks;
}

int cmd_corpus(const RunConfig& rc) {
  const fs::path out(rc.out_dir);
  auto programs = generate_corpus(rc.seed, rc.count);
  for (std::size_t i = 0; i < programs.size(); ++i) {
    write_file(out / ("corpus_" + std::to_string(rc.seed + i) + ".poly"),
               print(programs[i]));
  }
  std::cout << "wrote " << programs.size() << " programs to " << out.string()
            << "\n";
  return kExitOk;
}

int cmd_compare(const RunConfig& rc) {
  const AnalysisConfig cfg = analysis_config(rc);
  std::vector<Program> programs;
  if (!rc.input.empty()) {
    auto p = load(rc.input);
    if (!p) return kExitInput;
    programs.push_back(std::move(*p));
  } else {
    programs = generate_corpus(rc.seed, rc.count);
  }
  CorpusComparison c = compare_corpus(programs, cfg, fixpoint_options(rc));
  print_comparison(c);
  if (!rc.input.empty()) {
    ProgramIndex index(programs.front());
    ProgramComparison pc = compare_program(index, cfg, fixpoint_options(rc));
    for (const UncoveredFact& u : pc.uncovered) {
      std::cout << "uncovered: " << u.key.first << " " << u.key.second << " "
                << index.alloc_label(u.site) << "\n";
    }
    auto labels = [&](const std::set<StmtId>& sites) {
      std::string out;
      for (StmtId s : sites) out += " " + index.alloc_label(s);
      return out;
    };
    for (const PointsToDelta& d : pc.deltas) {
      std::cout << "delta: " << d.key.first << " " << d.key.second
                << " modular-only:" << labels(d.only_left)
                << " monolithic-only:" << labels(d.only_right) << "\n";
    }
  }
  write_file(fs::path(rc.out_dir) / "compare.json",
             comparison_to_json(c, cfg).dump(2) + "\n");
  return c.sound_programs == c.programs ? kExitOk : kExitInvariant;
}

void add_analysis_flags(CLI::App* cmd, RunConfig& rc) {
  cmd->add_option("--k", rc.k, "call-string bound")
      ->check(CLI::Range(0, 2));
  cmd->add_option("--field-mode", rc.field_mode, "field abstraction")
      ->check(CLI::IsMember({"sensitive", "based", "insensitive"}));
  cmd->add_flag("--no-specialization", rc.no_specialization,
                "stop after the per-language pre-analyses");
  cmd->add_option("--iter-cap", rc.iter_cap, "fixpoint iteration cap")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--out-dir", rc.out_dir, "directory for artifacts");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Modular points-to analysis for host/guest programs"};
  app.require_subcommand(1);
  RunConfig rc;

  auto* analyze = app.add_subcommand("analyze", "analyze a .poly program");
  analyze->add_option("input", rc.input, "program file")->required();
  add_analysis_flags(analyze, rc);
  analyze->add_option("--emit", rc.emit, "artifacts to write")
      ->check(CLI::IsMember({"json", "dot", "both"}));
  analyze->add_flag("--compare-oracle", rc.compare_oracle,
                    "check against the interpreter and monolithic analysis");

  auto* taint = app.add_subcommand("taint", "report source-to-sink leaks");
  taint->add_option("input", rc.input, "program file")->required();
  taint->add_option("--taint-config", rc.taint_config, "sources/sinks file")
      ->required();
  add_analysis_flags(taint, rc);

  auto* corpus = app.add_subcommand("corpus", "write generated programs");
  corpus->add_option("--seed", rc.seed, "first seed");
  corpus->add_option("--count", rc.count, "number of programs");
  corpus->add_option("--out-dir", rc.out_dir, "output directory");

  auto* compare = app.add_subcommand(
      "compare", "soundness and precision against the oracles");
  compare->add_option("input", rc.input, "program file (default: corpus)");
  compare->add_option("--seed", rc.seed, "first corpus seed");
  compare->add_option("--count", rc.count, "corpus size");
  add_analysis_flags(compare, rc);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*analyze) return cmd_analyze(rc);
    if (*taint) return cmd_taint(rc);
    if (*corpus) return cmd_corpus(rc);
    if (*compare) return cmd_compare(rc);
  } catch (const InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}
