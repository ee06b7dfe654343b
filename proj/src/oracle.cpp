#include "korder/oracle.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "korder/decompose.hpp"
#include "korder/random.hpp"

namespace korder::oracle {

std::vector<CoreValue> naive_cores(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<CoreValue> core(n, 0);
  std::vector<std::uint8_t> alive(n, 1);
  std::vector<std::size_t> deg(n);
  for (VertexId v = 0; v < n; ++v) deg[v] = g.degree(v);

  std::size_t remaining = n;
  for (CoreValue k = 1; remaining > 0; ++k) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (VertexId v = 0; v < n; ++v) {
        if (!alive[v] || deg[v] >= k) continue;
        alive[v] = 0;
        --remaining;
        core[v] = k - 1;
        for (VertexId w : g.neighbors(v)) {
          if (alive[w]) --deg[w];
        }
        changed = true;
      }
    }
  }
  return core;
}

Graph random_graph(std::size_t n, std::size_t m, std::uint64_t seed) {
  const std::uint64_t max_edges = n < 2 ? 0 : std::uint64_t{n} * (n - 1) / 2;
  if (m > max_edges) {
    throw std::invalid_argument("G(n, m) needs m <= n(n-1)/2");
  }
  Graph g(n);
  Rng rng(seed);
  if (2 * m > max_edges) {
    std::vector<Edge> all;
    all.reserve(max_edges);
    for (VertexId u = 0; u < n; ++u) {
      for (VertexId v = u + 1; v < n; ++v) all.push_back({u, v});
    }
    for (std::size_t i = 0; i < m; ++i) {
      std::swap(all[i], all[i + rng.below(all.size() - i)]);
      g.add_edge(all[i].u, all[i].v);
    }
    return g;
  }
  while (g.edge_count() < m) {
    const auto u = static_cast<VertexId>(rng.below(n));
    const auto v = static_cast<VertexId>(rng.below(n));
    g.add_edge(u, v);
  }
  return g;
}

namespace {

bool pick_absent(const Graph& g, Rng& rng, Edge& out) {
  const std::size_t n = g.vertex_count();
  const std::uint64_t max_edges = n < 2 ? 0 : std::uint64_t{n} * (n - 1) / 2;
  if (g.edge_count() >= max_edges) return false;
  if (4 * g.edge_count() < 3 * max_edges) {
    for (;;) {
      const auto u = static_cast<VertexId>(rng.below(n));
      const auto v = static_cast<VertexId>(rng.below(n));
      if (u != v && !g.has_edge(u, v)) {
        out = Edge{u, v};
        return true;
      }
    }
  }
  std::vector<Edge> absent;
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) {
      if (!g.has_edge(u, v)) absent.push_back({u, v});
    }
  }
  out = absent[rng.below(absent.size())];
  return true;
}

bool pick_present(const Graph& g, Rng& rng, Edge& out) {
  if (g.edge_count() == 0) return false;
  // Uniform over edges: pick an endpoint slot proportional to degree.
  std::uint64_t slot = rng.below(2 * g.edge_count());
  for (VertexId u = 0; u < g.vertex_count(); ++u) {
    const std::size_t d = g.degree(u);
    if (slot < d) {
      out = Edge{u, g.neighbors(u)[slot]};
      return true;
    }
    slot -= d;
  }
  return false;
}

}  // namespace

OpScript make_script(const Graph& start, std::size_t steps, std::uint64_t seed) {
  OpScript script{seed, {}};
  script.steps.reserve(steps);
  Graph g = start;
  Rng rng(seed);
  for (std::size_t i = 0; i < steps; ++i) {
    Edge e;
    const bool want_insert = i % 2 == 0;
    if (want_insert ? pick_absent(g, rng, e) : pick_present(g, rng, e)) {
      script.steps.push_back({want_insert ? StepKind::kInsert : StepKind::kRemove, e.u, e.v});
    } else if (want_insert ? pick_present(g, rng, e) : pick_absent(g, rng, e)) {
      script.steps.push_back({want_insert ? StepKind::kRemove : StepKind::kInsert, e.u, e.v});
    } else {
      break;
    }
    const Step& s = script.steps.back();
    if (s.kind == StepKind::kInsert) g.add_edge(s.u, s.v); else g.remove_edge(s.u, s.v);
  }
  return script;
}

bool script_valid(const Graph& start, const OpScript& script) {
  Graph g = start;
  for (const Step& s : script.steps) {
    if (s.u >= g.vertex_count() || s.v >= g.vertex_count() || s.u == s.v) return false;
    const bool ok = s.kind == StepKind::kInsert ? g.add_edge(s.u, s.v) : g.remove_edge(s.u, s.v);
    if (!ok) return false;
  }
  return true;
}

std::vector<Violation> check_state(const CoreMaintainer& cm) {
  std::vector<Violation> out;
  const auto expected = naive_cores(cm.graph());
  for (VertexId v = 0; v < expected.size(); ++v) {
    if (cm.core(v) != expected[v]) {
      out.push_back({"core-mismatch", "vertex " + std::to_string(v) + ": core " +
                                          std::to_string(cm.core(v)) + ", oracle " +
                                          std::to_string(expected[v])});
    }
  }
  for (const auto& sv : validate_quiescent(cm.state(), cm.graph())) {
    out.push_back({std::string("quiescent-") + to_string(sv.kind),
                   "vertex " + std::to_string(sv.vertex) + ": " + sv.detail});
  }
  return out;
}

namespace {

// Induced subgraph on `members` in the current graph plus `extra`.
bool induced_connected(const Graph& g, std::span<const VertexId> members, Edge extra) {
  if (members.empty()) return true;
  std::vector<std::uint8_t> in_set(g.vertex_count(), 0);
  for (VertexId v : members) in_set[v] = 1;
  std::vector<std::uint8_t> seen(g.vertex_count(), 0);
  std::vector<VertexId> stack{members.front()};
  seen[members.front()] = 1;
  std::size_t reached = 1;
  auto visit = [&](VertexId w) {
    if (in_set[w] && !seen[w]) {
      seen[w] = 1;
      ++reached;
      stack.push_back(w);
    }
  };
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (VertexId w : g.neighbors(v)) visit(w);
    if (v == extra.u) visit(extra.v);
    if (v == extra.v) visit(extra.u);
  }
  return reached == members.size();
}

}  // namespace

std::vector<Violation> check_step(const std::vector<CoreValue>& before, const Step& step,
                                  const OpStats& stats, CoreMaintainer& cm) {
  std::vector<Violation> out = check_state(cm);
  const auto changed = cm.last_changed();
  const bool insert = step.kind == StepKind::kInsert;
  const CoreValue k = std::min(before[step.u], before[step.v]);

  std::vector<std::uint8_t> in_changed(before.size(), 0);
  for (VertexId v : changed) in_changed[v] = 1;
  for (VertexId v = 0; v < before.size(); ++v) {
    const auto delta = static_cast<std::int64_t>(cm.core(v)) - static_cast<std::int64_t>(before[v]);
    if (delta < -1 || delta > 1) {
      out.push_back({"change-by-one", "vertex " + std::to_string(v) + " moved by " +
                                          std::to_string(delta)});
    }
    const std::int64_t expected = in_changed[v] ? (insert ? 1 : -1) : 0;
    if (delta != expected) {
      out.push_back({"reported-set", "vertex " + std::to_string(v) + " delta " +
                                         std::to_string(delta) + " but reported " +
                                         std::to_string(expected)});
    }
  }
  for (VertexId v : changed) {
    if (before[v] != k) {
      out.push_back({"locality-core", "vertex " + std::to_string(v) + " had core " +
                                          std::to_string(before[v]) + ", K = " +
                                          std::to_string(k)});
    }
  }
  if (!induced_connected(cm.graph(), changed, Edge{step.u, step.v})) {
    out.push_back({"locality-connected", "V* of size " + std::to_string(changed.size()) +
                                             " is not connected"});
  }
  if (stats.v_star_size != changed.size() || stats.v_star_size > stats.v_plus_size) {
    out.push_back({"stats", "|V*| " + std::to_string(stats.v_star_size) + ", |V+| " +
                                std::to_string(stats.v_plus_size)});
  }
  if (!insert && stats.v_plus_size != stats.v_star_size) {
    out.push_back({"removal-bounded", "|V+| " + std::to_string(stats.v_plus_size) +
                                          " != |V*| " + std::to_string(stats.v_star_size)});
  }
  for (auto& t : cm.take_trace_violations()) out.push_back({"trace", std::move(t)});
  return out;
}

std::optional<Failure> replay_checked(const Graph& start, const OpScript& script, Fault fault) {
  CoreMaintainer cm(start);
  cm.set_tracing(true);
  cm.set_fault(fault);
  if (auto v = check_state(cm); !v.empty()) return Failure{kInitialState, std::move(v)};
  for (std::size_t i = 0; i < script.steps.size(); ++i) {
    const Step& s = script.steps[i];
    const std::vector<CoreValue> before(cm.cores().begin(), cm.cores().end());
    const OpStats stats = s.kind == StepKind::kInsert ? cm.insert_edge(s.u, s.v)
                                                      : cm.remove_edge(s.u, s.v);
    if (auto v = check_step(before, s, stats, cm); !v.empty()) return Failure{i, std::move(v)};
  }
  return std::nullopt;
}

OpScript shrink(const Graph& start, const OpScript& script, const Failure& failure, Fault fault) {
  OpScript best = script;
  if (failure.step == kInitialState || failure.violations.empty()) {
    best.steps.clear();
    return best;
  }
  const std::string kind = failure.violations.front().kind;
  auto still_fails = [&](const OpScript& candidate) {
    if (!script_valid(start, candidate)) return false;
    const auto f = replay_checked(start, candidate, fault);
    return f && !f->violations.empty() && f->violations.front().kind == kind;
  };

  best.steps.resize(failure.step + 1);
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < best.steps.size(); ++i) {
      OpScript candidate = best;
      candidate.steps.erase(candidate.steps.begin() + static_cast<std::ptrdiff_t>(i));
      if (still_fails(candidate)) {
        // Trim again to the new first failure.
        const auto f = replay_checked(start, candidate, fault);
        candidate.steps.resize(f->step == kInitialState ? 0 : f->step + 1);
        best = std::move(candidate);
        progress = true;
        break;
      }
    }
  }
  return best;
}

FuzzReport fuzz(const FuzzConfig& config) {
  if (config.n < 2) throw std::invalid_argument("fuzz needs n >= 2");
  FuzzReport report;
  report.config = config;
  const Graph start = random_graph(config.n, config.m, Rng::split(config.seed, 1).next());
  const OpScript script = make_script(start, config.steps, Rng::split(config.seed, 2).next());
  report.failure = replay_checked(start, script, config.fault);
  if (!report.failure) {
    report.steps_checked = script.steps.size();
    return report;
  }
  report.steps_checked = report.failure->step == kInitialState ? 0 : report.failure->step + 1;
  report.reproduction = shrink(start, script, *report.failure, config.fault);
  return report;
}

std::string FuzzReport::to_text() const {
  std::ostringstream out;
  out << "graph G(n=" << config.n << ", m=" << config.m << ", seed=" << config.seed << ")\n";
  if (ok()) {
    out << "0 violations (" << steps_checked << " steps checked)\n";
    return out.str();
  }
  const Failure& f = *failure;
  out << f.violations.size() << " violations at ";
  if (f.step == kInitialState) out << "initial decomposition\n"; else out << "step " << f.step << "\n";
  for (const auto& v : f.violations) out << "  " << v.kind << ": " << v.detail << "\n";
  out << "minimized reproduction (" << reproduction.steps.size() << " steps):\n";
  for (const Step& s : reproduction.steps) {
    out << "  " << (s.kind == StepKind::kInsert ? "insert " : "remove ") << s.u << ' ' << s.v
        << "\n";
  }
  return out.str();
}

}  // namespace korder::oracle
