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

#include "polypta/corpus.h"

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>

namespace polypta {

namespace {

enum class Kind { HostTop, Bridge, GuestTop, GuestMember };

struct Plan {
  Kind kind;
  std::string name;
  int level = 0;
  std::size_t arity = 0;
  std::string owner;  // class of Bridge / GuestMember methods
};

const char* const kFields[] = {"f", "g"};
constexpr int kMaxLocals = 4;

class Generator {
 public:
  Generator(std::uint64_t seed, const CorpusOptions& opts)
      : rng_(seed), opts_(opts), budget_(opts.max_stmts) {}

  Program run() {
    plan();
    Program p;
    p.host.classes.push_back(ClassDecl{"HData", {"f", "g"}, {}, {}});
    for (int b = 0; b < bridge_classes_; ++b) {
      p.host.classes.push_back(
          ClassDecl{"B" + std::to_string(b), {"f", "g"}, {}, {}});
    }
    p.guest.classes.push_back(ClassDecl{"GData", {"f", "g"}, {}, {}});

    const std::size_t reserved = ifaces_.size();
    const std::size_t share =
        std::max<std::size_t>(1, (budget_ - reserved) / plans_.size() + 1);
    budget_ -= reserved;
    for (const Plan& m : plans_) {
      MethodDecl decl = body(m, share);
      switch (m.kind) {
        case Kind::HostTop:
          p.host.methods.push_back(std::move(decl));
          break;
        case Kind::GuestTop:
          p.guest.methods.push_back(std::move(decl));
          break;
        case Kind::Bridge:
          for (ClassDecl& c : p.host.classes) {
            if (c.name == m.owner) c.methods.push_back(std::move(decl));
          }
          break;
        case Kind::GuestMember:
          p.guest.classes.front().methods.push_back(std::move(decl));
          break;
      }
    }
    number_statements(p);
    return p;
  }

 private:
  int uniform(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(uniform(0, static_cast<int>(v.size()) - 1))];
  }

  void plan() {
    const int top = opts_.levels - 1;
    bridge_classes_ = uniform(1, 2);
    int host_tops = uniform(1, 3);
    int guest_tops = uniform(1, 3);
    for (int h = 0; h < host_tops; ++h) {
      plans_.push_back(Plan{Kind::HostTop, "h" + std::to_string(h),
                            h == 0 ? 0 : uniform(0, std::min(2, top)), 0, ""});
    }
    for (int g = 0; g < guest_tops; ++g) {
      // g0 is always an eval target right below the host entry level.
      plans_.push_back(Plan{Kind::GuestTop, "g" + std::to_string(g),
                            g == 0 ? std::min(1, top)
                                   : uniform(std::min(1, top), std::min(4, top)),
                            g == 0 ? 0 : static_cast<std::size_t>(uniform(0, 1)),
                            ""});
    }
    for (int b = 0; b < bridge_classes_; ++b) {
      int methods = uniform(1, 3);
      for (int j = 0; j < methods; ++j) {
        plans_.push_back(Plan{Kind::Bridge,
                              "b" + std::to_string(b) + "m" + std::to_string(j),
                              uniform(std::min(2, top), top),
                              static_cast<std::size_t>(uniform(0, 2)),
                              "B" + std::to_string(b)});
      }
    }
    if (chance(0.5)) {
      plans_.push_back(Plan{Kind::GuestMember, "gm0",
                            uniform(std::min(2, top), top),
                            static_cast<std::size_t>(uniform(0, 1)), "GData"});
    }
    int n_ifaces = uniform(1, 3);
    for (int i = 0; i < n_ifaces; ++i) {
      std::string cls = "B" + std::to_string(uniform(0, bridge_classes_ - 1));
      std::string host = "h" + std::to_string(uniform(0, host_tops - 1));
      ifaces_.push_back({"i" + std::to_string(i), cls, host});
    }
  }

  struct Iface {
    std::string var;
    std::string cls;
    std::string host;
  };

  struct Scope {
    const Plan* plan;
    std::vector<std::string> sources;
    int locals = 0;
  };

  static bool is_host(const Plan& p) {
    return p.kind == Kind::HostTop || p.kind == Kind::Bridge;
  }

  std::vector<const Plan*> deeper(const Plan& from, Kind kind) const {
    std::vector<const Plan*> out;
    for (const Plan& p : plans_) {
      if (p.kind == kind && p.level > from.level) out.push_back(&p);
    }
    return out;
  }

  MethodDecl body(const Plan& m, std::size_t share) {
    MethodDecl decl;
    decl.name = m.name;
    if (m.kind == Kind::Bridge || m.kind == Kind::GuestMember) {
      decl.owner = m.owner;
    }
    Scope scope{&m, {}, 0};
    for (std::size_t i = 0; i < m.arity; ++i) {
      decl.params.push_back("p" + std::to_string(i));
      scope.sources.push_back(decl.params.back());
    }
    if (decl.owner) scope.sources.push_back(kThisVar);
    if (m.kind == Kind::HostTop) {
      bool shares = false;
      for (const Iface& iv : ifaces_) {
        if (iv.host != m.name) continue;
        decl.body.push_back(Stmt{InterfaceNewStmt{iv.var, iv.cls, std::nullopt}, {}, kNoStmt});
        scope.sources.push_back(iv.var);
        shares = true;
      }
      std::vector<const Plan*> guests;
      for (const Plan* g : deeper(m, Kind::GuestTop)) {
        if (g->arity == 0) guests.push_back(g);
      }
      if (shares && !guests.empty() && budget_ > 0 && chance(0.8)) {
        --budget_;
        decl.body.push_back(
            Stmt{EvalStmt{target(scope), pick(guests)->name}, {}, kNoStmt});
      }
    }
    if (m.kind == Kind::GuestTop || m.kind == Kind::GuestMember) {
      for (const Iface& iv : ifaces_) scope.sources.push_back(iv.var);
    }

    std::size_t len = std::min<std::size_t>(
        static_cast<std::size_t>(uniform(1, 6)), share);
    for (std::size_t i = 0; i < len && budget_ > 0; ++i) {
      if (auto s = statement(scope, true)) decl.body.push_back(std::move(*s));
    }
    if (budget_ > 0 && !scope.sources.empty() && chance(0.7)) {
      --budget_;
      decl.body.push_back(Stmt{ReturnStmt{pick(scope.sources)}, {}, kNoStmt});
    }
    return decl;
  }

  std::string target(Scope& scope) {
    std::string name;
    if (scope.locals < kMaxLocals && (scope.locals == 0 || chance(0.6))) {
      name = "v" + std::to_string(scope.locals++);
    } else {
      name = "v" + std::to_string(uniform(0, scope.locals - 1));
    }
    if (std::find(scope.sources.begin(), scope.sources.end(), name) ==
        scope.sources.end()) {
      scope.sources.push_back(name);
    }
    return name;
  }

  std::optional<std::string> maybe_target(Scope& scope) {
    if (chance(0.7)) return target(scope);
    return std::nullopt;
  }

  std::vector<std::string> args(Scope& scope, std::size_t n) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(pick(scope.sources));
    return out;
  }

  std::optional<Stmt> statement(Scope& scope, bool allow_if) {
    if (budget_ == 0) return std::nullopt;
    const Plan& m = *scope.plan;
    const bool host = is_host(m);
    const bool have = !scope.sources.empty();

    std::vector<int> kinds;  // weighted choice below
    std::map<int, int> weight;
    auto offer = [&](int k, int w) {
      kinds.push_back(k);
      weight[k] = w;
    };
    enum { kNew, kAssign, kLoad, kStore, kCall, kEval, kBridge, kMember, kIf };
    offer(kNew, 3);
    if (have) {
      offer(kAssign, 2);
      offer(kLoad, 2);
      offer(kStore, 3);
    }
    std::vector<const Plan*> statics =
        deeper(m, host ? Kind::HostTop : Kind::GuestTop);
    if (!statics.empty()) offer(kCall, 2);
    std::vector<const Plan*> guests;
    for (const Plan* g : deeper(m, Kind::GuestTop)) {
      if (g->arity == 0) guests.push_back(g);  // eval takes no arguments
    }
    if (host && !guests.empty()) offer(kEval, 5);
    std::vector<const Plan*> bridges;
    for (const Plan* b : deeper(m, Kind::Bridge)) {
      // The guest only reaches classes exposed through an interface variable.
      bool exposed = std::any_of(ifaces_.begin(), ifaces_.end(),
                                 [&](const Iface& iv) { return iv.cls == b->owner; });
      if (host || exposed) bridges.push_back(b);
    }
    if (!bridges.empty() && have) offer(kBridge, host ? 2 : 6);
    std::vector<const Plan*> members = deeper(m, Kind::GuestMember);
    if (!host && !members.empty() && have) offer(kMember, 2);
    if (allow_if && budget_ >= 3) offer(kIf, 1);

    int total = 0;
    for (int k : kinds) total += weight[k];
    int r = uniform(0, total - 1);
    int kind = kinds.front();
    for (int k : kinds) {
      if (r < weight[k]) {
        kind = k;
        break;
      }
      r -= weight[k];
    }

    --budget_;
    switch (kind) {
      case kNew: {
        std::string t = target(scope);
        return Stmt{NewStmt{t, host ? "HData" : "GData", std::nullopt}, {}, kNoStmt};
      }
      case kAssign: {
        std::string src = pick(scope.sources);
        return Stmt{AssignStmt{target(scope), src}, {}, kNoStmt};
      }
      case kLoad: {
        std::string base = pick(scope.sources);
        std::string field = kFields[uniform(0, 1)];
        return Stmt{LoadStmt{target(scope), base, field}, {}, kNoStmt};
      }
      case kStore: {
        std::string base = pick(scope.sources);
        std::string src = pick(scope.sources);
        return Stmt{StoreStmt{base, kFields[uniform(0, 1)], src}, {}, kNoStmt};
      }
      case kCall: {
        const Plan* callee = pick(statics);
        auto a = args(scope, callee->arity);
        auto t = maybe_target(scope);
        return Stmt{InvokeStmt{t, std::nullopt, callee->name, a}, {}, kNoStmt};
      }
      case kEval: {
        const Plan* callee = pick(guests);
        return Stmt{EvalStmt{maybe_target(scope), callee->name}, {}, kNoStmt};
      }
      case kBridge: {
        const Plan* callee = pick(bridges);
        std::string recv = receiver_for(scope, callee->owner);
        auto a = args(scope, callee->arity);
        auto t = maybe_target(scope);
        return Stmt{InvokeStmt{t, recv, callee->name, a}, {}, kNoStmt};
      }
      case kMember: {
        const Plan* callee = pick(members);
        std::string recv = pick(scope.sources);
        auto a = args(scope, callee->arity);
        auto t = maybe_target(scope);
        return Stmt{InvokeStmt{t, recv, callee->name, a}, {}, kNoStmt};
      }
      case kIf: {
        IfStmt s{"c", {}, std::nullopt};
        if (auto inner = statement(scope, false)) s.then_body.push_back(std::move(*inner));
        if (budget_ > 0 && chance(0.6)) {
          s.else_body = Block{};
          if (auto inner = statement(scope, false)) {
            s.else_body->push_back(std::move(*inner));
          }
        }
        return Stmt{std::move(s), {}, kNoStmt};
      }
    }
    return std::nullopt;
  }

  // Prefers a visible interface variable of the right class, then `this`
  // inside bridge methods, then any variable (possibly an alias).
  std::string receiver_for(Scope& scope, const std::string& cls) {
    std::vector<std::string> good;
    for (const Iface& iv : ifaces_) {
      if (iv.cls == cls && std::find(scope.sources.begin(), scope.sources.end(),
                                     iv.var) != scope.sources.end()) {
        good.push_back(iv.var);
      }
    }
    if (scope.plan->kind == Kind::Bridge && scope.plan->owner == cls) {
      good.push_back(kThisVar);
    }
    if (!good.empty() && chance(0.7)) return pick(good);
    return pick(scope.sources);
  }

  std::mt19937_64 rng_;
  CorpusOptions opts_;
  std::size_t budget_;
  int bridge_classes_ = 1;
  std::vector<Plan> plans_;
  std::vector<Iface> ifaces_;
};

}  // namespace

Program generate_program(std::uint64_t seed, const CorpusOptions& opts) {
  return Generator(seed, opts).run();
}

std::vector<Program> generate_corpus(std::uint64_t seed, std::size_t count,
                                     const CorpusOptions& opts) {
  std::vector<Program> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back(generate_program(seed + i, opts));
  }
  return out;
}

}  // namespace polypta
