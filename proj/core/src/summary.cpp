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

#include "polypta/summary.h"

#include <deque>
#include <stdexcept>

namespace polypta {

AccessPath AccessPath::local(std::string name,
                             std::optional<std::string> field) {
  return AccessPath{SummaryBase{std::move(name), false}, std::move(field)};
}

AccessPath AccessPath::interface(std::string name,
                                 std::optional<std::string> field) {
  return AccessPath{SummaryBase{std::move(name), true}, std::move(field)};
}

std::string AccessPath::to_string() const {
  std::string out = base.name;
  if (field) out += "." + *field;
  return out;
}

std::string constraint_to_string(const Constraint& c,
                                 const ProgramIndex& index) {
  if (const auto* m = std::get_if<MemberConstraint>(&c)) {
    std::string out = "{";
    bool first = true;
    for (const HeapObject& h : m->heap) {
      if (!first) out += ", ";
      first = false;
      out += index.alloc_label(h.site);
    }
    return out + "} ⊆ [" + m->path.to_string() + "]";
  }
  const auto& s = std::get<SubsetConstraint>(c);
  return "[" + s.from.to_string() + "] ⊆ [" + s.to.to_string() + "]";
}

ConstraintSet make_constraints(const PreAnalysis& pre, MethodId f) {
  const ProgramIndex& index = pre.index();
  const MethodInfo& info = index.method(f);
  auto path = [&](const std::string& name,
                  std::optional<std::string> field = std::nullopt) {
    const InterfaceVar* iv = index.find_interface_var(name);
    bool shared = index.is_interface_ref(f, name) ||
                  (iv != nullptr && info.module == ModuleId::Host &&
                   iv->method == info.decl->name);
    return AccessPath{SummaryBase{name, shared}, std::move(field)};
  };
  auto pts = [&](const std::string& name) {
    return pre.points_to_collapsed(f, name);
  };

  ConstraintSet cs;
  for (const Stmt* stmt : info.stmts) {
    std::visit(
        [&](const auto& s) {
          using T = std::decay_t<decltype(s)>;
          if constexpr (std::is_same_v<T, NewStmt> ||
                        std::is_same_v<T, InterfaceNewStmt>) {
            cs.insert(MemberConstraint{pts(s.target), path(s.target)});
          } else if constexpr (std::is_same_v<T, AssignStmt>) {
            cs.insert(SubsetConstraint{path(s.source), path(s.target)});
          } else if constexpr (std::is_same_v<T, LoadStmt>) {
            cs.insert(SubsetConstraint{path(s.base, s.field), path(s.target)});
          } else if constexpr (std::is_same_v<T, StoreStmt>) {
            cs.insert(SubsetConstraint{path(s.source), path(s.base, s.field)});
          } else if constexpr (std::is_same_v<T, InvokeStmt> ||
                               std::is_same_v<T, EvalStmt>) {
            if (s.target) {
              cs.insert(MemberConstraint{pts(*s.target), path(*s.target)});
            }
          } else if constexpr (std::is_same_v<T, ReturnStmt>) {
            cs.insert(SubsetConstraint{path(s.source), path(kReturnVar)});
          }
        },
        stmt->node);
  }
  return cs;
}

FunctionSummary cubic_solve(const ConstraintSet& cs) {
  std::map<AccessPath, std::size_t> ids;
  std::vector<AccessPath> paths;
  auto id = [&](const AccessPath& p) {
    auto [it, fresh] = ids.emplace(p, paths.size());
    if (fresh) paths.push_back(p);
    return it->second;
  };
  for (const Constraint& c : cs) {
    if (const auto* m = std::get_if<MemberConstraint>(&c)) {
      id(m->path);
    } else {
      const auto& s = std::get<SubsetConstraint>(c);
      id(s.from);
      id(s.to);
    }
  }

  const std::size_t n = paths.size();
  std::vector<HeapSet> sol(n);
  std::vector<bool> resolved(n, false);
  std::vector<std::set<std::size_t>> succ(n);
  std::deque<std::size_t> work;
  std::vector<bool> queued(n, false);
  auto push = [&](std::size_t v) {
    if (!queued[v]) {
      queued[v] = true;
      work.push_back(v);
    }
  };
  for (const Constraint& c : cs) {
    if (const auto* m = std::get_if<MemberConstraint>(&c)) {
      std::size_t v = ids.at(m->path);
      merge_into(sol[v], m->heap);
      resolved[v] = true;
      push(v);
    } else {
      const auto& s = std::get<SubsetConstraint>(c);
      succ[ids.at(s.from)].insert(ids.at(s.to));
    }
  }
  while (!work.empty()) {
    std::size_t v = work.front();
    work.pop_front();
    queued[v] = false;
    for (std::size_t w : succ[v]) {
      bool changed = merge_into(sol[w], sol[v]);
      if (!resolved[w]) {
        resolved[w] = true;
        changed = true;
      }
      if (changed) push(w);
    }
  }

  FunctionSummary out;
  for (std::size_t v = 0; v < n; ++v) {
    if (resolved[v]) {
      out.emplace(paths[v], sol[v]);
    } else {
      out.emplace(paths[v], std::nullopt);
    }
  }
  return out;
}

namespace {

ConstraintSet rewrite_this(const ConstraintSet& cs, const std::string& via) {
  auto fix = [&](AccessPath p) {
    if (!p.base.iface && p.base.name == kThisVar) {
      p.base = SummaryBase{via, true};
    }
    return p;
  };
  ConstraintSet out;
  for (const Constraint& c : cs) {
    if (const auto* m = std::get_if<MemberConstraint>(&c)) {
      out.insert(MemberConstraint{m->heap, fix(m->path)});
    } else {
      const auto& s = std::get<SubsetConstraint>(c);
      out.insert(SubsetConstraint{fix(s.from), fix(s.to)});
    }
  }
  return out;
}

bool merge_optional(std::optional<HeapSet>& into,
                    const std::optional<HeapSet>& from) {
  if (!from) return false;
  if (!into) {
    into = *from;
    return true;
  }
  return merge_into(*into, *from);
}

bool intersects(const HeapSet& a, const HeapSet& b) {
  for (const HeapObject& h : a) {
    if (b.count(h)) return true;
  }
  return false;
}

// Union-find over bases; interface bases have no owning function.
struct BaseKey {
  std::optional<BridgedFn> fn;
  std::string name;

  auto operator<=>(const BaseKey&) const = default;
};

BaseKey base_key(const BridgedFn& fn, const SummaryBase& b) {
  if (b.iface) return BaseKey{std::nullopt, b.name};
  return BaseKey{fn, b.name};
}

class BaseUnion {
 public:
  BaseKey find(const BaseKey& k) {
    auto it = parent_.find(k);
    if (it == parent_.end()) {
      parent_.emplace(k, k);
      return k;
    }
    if (it->second == k) return k;
    BaseKey root = find(it->second);
    parent_[k] = root;
    return root;
  }
  void unite(const BaseKey& a, const BaseKey& b) {
    BaseKey ra = find(a);
    BaseKey rb = find(b);
    if (ra == rb) return;
    if (rb < ra) std::swap(ra, rb);
    parent_[rb] = ra;
  }

 private:
  std::map<BaseKey, BaseKey> parent_;
};

}  // namespace

ConstraintMap specialized_constraints(const BridgeCallGraph& b,
                                      const PreAnalysis& host,
                                      const PreAnalysis& guest) {
  const ProgramIndex& index = host.index();
  ConstraintMap out;
  out[BridgedFn{b.root, std::nullopt}] = make_constraints(host, b.root);
  for (const BridgeCallEdge& e : b.edges) {
    ConstraintSet cs = rewrite_this(make_constraints(host, e.to), e.via);
    const auto& params = index.method(e.to).decl->params;
    for (const BridgeInvocation& inv : b.invocations) {
      if (inv.bridged != e.to || inv.via != e.via) continue;
      const auto& call = std::get<InvokeStmt>(index.site(inv.site).stmt->node);
      for (std::size_t j = 0; j < call.args.size() && j < params.size(); ++j) {
        HeapSet actual = guest.points_to_collapsed(inv.guest_method, call.args[j]);
        if (!actual.empty()) {
          cs.insert(MemberConstraint{actual, AccessPath::local(params[j])});
        }
      }
    }
    out[BridgedFn{e.to, e.via}] = std::move(cs);
  }
  return out;
}

Specialization specialize_summary(const BridgeCallGraph& b,
                                  const PreAnalysis& host,
                                  const PreAnalysis& guest) {
  Specialization spec;
  spec.constraints = specialized_constraints(b, host, guest);
  for (const auto& [fn, cs] : spec.constraints) {
    spec.solved[fn] = cubic_solve(cs);
  }
  spec.unified = unify_summaries(spec.solved, spec.constraints);
  return spec;
}

SummaryMap unify_summaries(const SummaryMap& summaries,
                           const ConstraintMap& constraints) {
  SummaryMap cur = summaries;
  while (true) {
    BaseUnion uf;
    for (const auto& [fn, sum] : cur) {
      std::vector<std::pair<BaseKey, const HeapSet*>> plain;
      for (const auto& [ap, val] : sum) {
        uf.find(base_key(fn, ap.base));
        if (!ap.field && val && !val->empty()) {
          plain.emplace_back(base_key(fn, ap.base), &*val);
        }
      }
      for (std::size_t a = 0; a < plain.size(); ++a) {
        for (std::size_t b = a + 1; b < plain.size(); ++b) {
          if (intersects(*plain[a].second, *plain[b].second)) {
            uf.unite(plain[a].first, plain[b].first);
          }
        }
      }
    }
    for (const auto& [fn, cs] : constraints) {
      if (!cur.count(fn)) continue;
      for (const Constraint& c : cs) {
        const auto* s = std::get_if<SubsetConstraint>(&c);
        if (s == nullptr || s->from.field || s->to.field) continue;
        uf.unite(base_key(fn, s->from.base), base_key(fn, s->to.base));
      }
    }

    std::map<std::pair<BaseKey, std::string>, std::optional<HeapSet>> fields;
    std::map<std::string, std::optional<HeapSet>> shared;
    for (const auto& [fn, sum] : cur) {
      for (const auto& [ap, val] : sum) {
        if (ap.field) {
          merge_optional(fields[{uf.find(base_key(fn, ap.base)), *ap.field}],
                         val);
        } else if (ap.base.iface) {
          merge_optional(shared[ap.base.name], val);
        }
      }
    }

    SummaryMap next = cur;
    for (auto& [fn, sum] : next) {
      for (auto& [ap, val] : sum) {
        if (ap.field) {
          merge_optional(val, fields[{uf.find(base_key(fn, ap.base)), *ap.field}]);
        } else if (ap.base.iface) {
          merge_optional(val, shared[ap.base.name]);
        }
      }
      auto cs = constraints.find(fn);
      if (cs == constraints.end()) continue;
      ConstraintSet extended = cs->second;
      for (const auto& [ap, val] : sum) {
        if (val) extended.insert(MemberConstraint{*val, ap});
      }
      for (const auto& [ap, val] : cubic_solve(extended)) {
        merge_optional(sum[ap], val);
      }
    }
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

Projection project(MethodId f, const Context& ctx, const PreAnalysis& pre) {
  if (!pre.is_reachable(f, ctx)) {
    throw std::invalid_argument(pre.index().method_label(f) +
                                " is not reachable under " +
                                pre.index().context_label(ctx));
  }
  Projection r{f, ctx, {}};
  for (const std::string& d : pre.index().method(f).defs) {
    r.entries.emplace(d, pre.points_to(f, d, ctx));
  }
  return r;
}

InjectionOutcome inject_summary(const Projection& r, PreAnalysis& host,
                                PreAnalysis& guest,
                                const FunctionSummary& summary,
                                const InjectionTarget& target) {
  const ProgramIndex& index = host.index();
  const MethodId m = target.fn.method;
  const Context& ctx = target.ctx;
  const FieldMode mode = host.config().field_mode;
  InjectionOutcome out;

  auto var_name = [&](const SummaryBase& b) -> std::string {
    if (b.iface && target.fn.via && b.name == *target.fn.via) return kThisVar;
    return b.name;
  };
  auto add = [&](PreAnalysis& pa, const Location& loc, const HeapSet& heap,
                 std::vector<Location>& seeds) {
    seeds.push_back(loc);
    if (pa.add_location_facts(loc, heap)) out.changed = true;
  };

  HeapSet ret;
  for (const auto& [ap, val] : summary) {
    if (!val || val->empty()) continue;
    const std::string name = var_name(ap.base);
    if (!ap.field) {
      add(host, host.var_key(m, name, ctx), *val, out.host_seeds);
      if (name == kReturnVar) merge_into(ret, *val);
      continue;
    }
    if (mode == FieldMode::Based) {
      add(host, FieldKey{std::nullopt, *ap.field}, *val, out.host_seeds);
      continue;
    }
    HeapSet objs = host.points_to(m, name, ctx);
    if (objs.empty()) {
      ++out.pending;
      continue;
    }
    for (const HeapObject& o : objs) {
      add(host, field_key(mode, o, *ap.field), *val, out.host_seeds);
    }
  }

  if (auto it = r.entries.find(kReturnVar); it != r.entries.end()) {
    merge_into(ret, it->second);
  }
  if (!ret.empty()) {
    for (const BridgeInvocation& inv : target.callers) {
      const auto& call = std::get<InvokeStmt>(index.site(inv.site).stmt->node);
      if (!call.target) continue;
      for (const Context& c : guest.contexts_of(inv.guest_method)) {
        add(guest, guest.var_key(inv.guest_method, *call.target, c), ret,
            out.guest_seeds);
      }
    }
  }
  host.solve();
  guest.solve();
  return out;
}

}  // namespace polypta
