#include "korder/decompose.hpp"

#include <algorithm>
#include <cassert>

namespace korder {

CoreValue CoreState::max_core() const {
  return core.empty() ? 0 : *std::max_element(core.begin(), core.end());
}

std::vector<VertexId> peeling_order(const Graph& g, std::vector<CoreValue>& core,
                                    std::vector<std::uint32_t>* deg_out) {
  const std::size_t n = g.vertex_count();
  if (deg_out) deg_out->assign(n, 0);
  // deg and pos side by side: the inner loop reads both for every neighbor.
  struct Slot {
    std::uint32_t deg;
    std::uint32_t pos;
  };
  std::vector<Slot> slot(n);
  std::size_t max_deg = 0;
  for (VertexId v = 0; v < n; ++v) {
    slot[v].deg = static_cast<std::uint32_t>(g.degree(v));
    max_deg = std::max<std::size_t>(max_deg, slot[v].deg);
  }

  std::vector<std::uint32_t> bin(max_deg + 1, 0);
  for (VertexId v = 0; v < n; ++v) ++bin[slot[v].deg];
  std::uint32_t start = 0;
  for (auto& b : bin) {
    const std::uint32_t count = b;
    b = start;
    start += count;
  }

  std::vector<VertexId> vert(n);
  for (VertexId v = 0; v < n; ++v) {
    slot[v].pos = bin[slot[v].deg]++;
    vert[slot[v].pos] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  if (!bin.empty()) bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const VertexId v = vert[i];
    const std::uint32_t dv = slot[v].deg;
    std::uint32_t later = 0;
    for (VertexId u : g.neighbors(v)) {
      Slot& su = slot[u];
      if (su.pos > i) ++later;
      if (su.deg > dv) {
        const std::uint32_t pw = bin[su.deg];
        const VertexId w = vert[pw];
        if (u != w) {
          vert[su.pos] = w;
          slot[w].pos = su.pos;
          vert[pw] = u;
          su.pos = pw;
        }
        ++bin[su.deg];
        --su.deg;
      }
    }
    if (deg_out) (*deg_out)[v] = later;
  }
  core.resize(n);
  for (VertexId v = 0; v < n; ++v) core[v] = slot[v].deg;
  return vert;
}

CoreState decompose(const Graph& g) {
  const std::size_t n = g.vertex_count();
  CoreState cs;
  const std::vector<VertexId> order = peeling_order(g, cs.core, &cs.deg_out);
  const CoreValue max_core = cs.max_core();

  std::vector<std::vector<VertexId>> blocks(std::size_t{max_core} + 1);
  for (VertexId v : order) blocks[cs.core[v]].push_back(v);
  cs.order = OrderList::from_blocks(blocks, max_core + 2);

  cs.deg_in.assign(n, 0);
  cs.color.assign(n, Color::kWhite);
  return cs;
}

const char* to_string(StateViolation::Kind kind) {
  switch (kind) {
    case StateViolation::Kind::kMissingItem: return "missing-item";
    case StateViolation::Kind::kBlock: return "block";
    case StateViolation::Kind::kDegOut: return "deg-out";
    case StateViolation::Kind::kDegIn: return "deg-in";
    case StateViolation::Kind::kColor: return "color";
    case StateViolation::Kind::kOutDegreeBound: return "out-degree-bound";
    case StateViolation::Kind::kLabels: return "labels";
  }
  return "unknown";
}

std::vector<StateViolation> validate_quiescent(const CoreState& cs, const Graph& g) {
  using Kind = StateViolation::Kind;
  std::vector<StateViolation> out;
  const std::size_t n = g.vertex_count();
  auto report = [&](Kind kind, VertexId v, std::string detail) {
    out.push_back({kind, v, std::move(detail)});
  };

  if (cs.core.size() != n || cs.deg_out.size() != n || cs.deg_in.size() != n ||
      cs.color.size() != n) {
    report(Kind::kMissingItem, 0, "state arrays do not match vertex count");
    return out;
  }
  if (!cs.order.labels_consistent()) report(Kind::kLabels, 0, "labels not strictly increasing");

  // Block membership from a full traversal.
  std::vector<std::int64_t> block_of(n, -1);
  std::int64_t current = -1;
  for (ItemHandle h = cs.order.front(); h; h = cs.order.next(h)) {
    if (cs.order.is_sentinel(h)) {
      current = cs.order.payload(h);
      continue;
    }
    const VertexId v = cs.order.payload(h);
    if (v < n) block_of[v] = current;
  }

  for (VertexId v = 0; v < n; ++v) {
    if (!cs.order.contains(v)) {
      report(Kind::kMissingItem, v, "vertex has no order item");
      continue;
    }
    if (block_of[v] != static_cast<std::int64_t>(cs.core[v])) {
      report(Kind::kBlock, v,
             "in block " + std::to_string(block_of[v]) + " but core " + std::to_string(cs.core[v]));
    }
    std::uint32_t post = 0;
    for (VertexId w : g.neighbors(v)) {
      if (cs.order.contains(w) && cs.precedes(v, w)) ++post;
    }
    if (cs.deg_out[v] != post) {
      report(Kind::kDegOut, v,
             "deg_out " + std::to_string(cs.deg_out[v]) + " but |post| " + std::to_string(post));
    }
    if (post > cs.core[v]) {
      report(Kind::kOutDegreeBound, v,
             "|post| " + std::to_string(post) + " exceeds core " + std::to_string(cs.core[v]));
    }
    if (cs.deg_in[v] != 0) report(Kind::kDegIn, v, "deg_in " + std::to_string(cs.deg_in[v]));
    if (cs.color[v] != Color::kWhite) report(Kind::kColor, v, "not white");
  }
  return out;
}

}  // namespace korder
