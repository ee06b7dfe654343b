#pragma once

// Helpers shared by the unit tests and the acceptance binary.

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "korder/graph.hpp"
#include "korder/order_list.hpp"
#include "korder/random.hpp"

namespace korder::testing {

inline Graph graph_from(std::size_t n, std::initializer_list<std::pair<VertexId, VertexId>> edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

inline Graph complete_graph(std::size_t n) {
  Graph g(n);
  for (VertexId u = 0; u < n; ++u) {
    for (VertexId v = u + 1; v < n; ++v) g.add_edge(u, v);
  }
  return g;
}

struct OrderScriptResult {
  bool ok = true;
  std::string detail;
  std::size_t ops = 0;
  std::size_t pairs_checked = 0;
  std::uint64_t relabels = 0;
  std::uint64_t inserts = 0;
};

// Replays a random script against OrderList and a plain vector holding the
// expected sequence. Tokens: vertex v as v, sentinel k as kSentinelBit | k.
// Half the insertions go next to a "hot" item so gaps run out and relabeling
// is exercised.
inline OrderScriptResult run_order_script(std::uint64_t seed, std::size_t ops, std::size_t pairs,
                                          std::uint32_t blocks = 4) {
  constexpr std::uint32_t kSentinelBit = 1u << 31;
  OrderScriptResult res;
  Rng rng(seed);
  OrderList list(blocks - 1);
  std::vector<std::uint32_t> ref;
  for (std::uint32_t k = 0; k < blocks; ++k) ref.push_back(kSentinelBit | k);
  std::vector<VertexId> live;
  VertexId next_id = 0;

  auto handle_of_token = [&](std::uint32_t t) {
    return (t & kSentinelBit) ? list.sentinel(t & ~kSentinelBit) : list.handle_of(t);
  };
  auto index_of = [&](std::uint32_t t) {
    return static_cast<std::size_t>(std::find(ref.begin(), ref.end(), t) - ref.begin());
  };
  auto fail = [&](std::string why) {
    res.ok = false;
    res.detail = std::move(why);
    return res;
  };
  auto compare_traversal = [&]() {
    std::vector<std::uint32_t> walk;
    for (ItemHandle h = list.front(); h; h = list.next(h)) {
      walk.push_back(list.is_sentinel(h) ? (kSentinelBit | list.payload(h)) : list.payload(h));
    }
    return walk == ref && list.labels_consistent();
  };

  std::uint32_t hot = ref.front();
  for (std::size_t i = 0; i < ops; ++i) {
    const auto r = rng.below(100);
    if (r < 30 && !live.empty()) {
      const std::size_t pick = rng.below(live.size());
      const VertexId v = live[pick];
      list.erase_vertex(v);
      ref.erase(ref.begin() + static_cast<std::ptrdiff_t>(index_of(v)));
      live[pick] = live.back();
      live.pop_back();
      if (hot == v) hot = ref.front();
    } else {
      const VertexId v = next_id++;
      std::uint32_t anchor;
      if (rng.below(2) == 0) {
        anchor = hot;
      } else {
        anchor = ref[rng.below(ref.size())];
      }
      const auto where = rng.below(3);
      if (where == 0) {
        list.insert_after(handle_of_token(anchor), v);
        ref.insert(ref.begin() + static_cast<std::ptrdiff_t>(index_of(anchor) + 1), v);
      } else if (where == 1 && !(anchor & kSentinelBit)) {
        list.insert_before(handle_of_token(anchor), v);
        ref.insert(ref.begin() + static_cast<std::ptrdiff_t>(index_of(anchor)), v);
      } else {
        const auto k = static_cast<std::uint32_t>(rng.below(blocks));
        const bool head = rng.below(2) == 0;
        list.insert_into_block(k, head ? BlockEnd::kHead : BlockEnd::kTail, v);
        std::size_t at = index_of(kSentinelBit | k) + 1;
        if (!head) {
          while (at < ref.size() && !(ref[at] & kSentinelBit)) ++at;
        }
        ref.insert(ref.begin() + static_cast<std::ptrdiff_t>(at), v);
      }
      live.push_back(v);
      if (rng.below(8) == 0) hot = v;
    }
    ++res.ops;
    if (i % 997 == 0 && !compare_traversal()) {
      std::ostringstream os;
      os << "traversal differs after op " << i;
      return fail(os.str());
    }
  }
  if (!compare_traversal()) return fail("final traversal differs");
  if (list.vertex_count() != live.size()) return fail("vertex count differs");

  for (std::size_t p = 0; p < pairs && ref.size() >= 2; ++p) {
    const std::size_t a = rng.below(ref.size());
    std::size_t b = rng.below(ref.size() - 1);
    if (b >= a) ++b;
    if (list.precedes(handle_of_token(ref[a]), handle_of_token(ref[b])) != (a < b)) {
      std::ostringstream os;
      os << "precedes disagrees at positions " << a << ", " << b;
      return fail(os.str());
    }
    ++res.pairs_checked;
  }
  res.relabels = list.relabel_count();
  res.inserts = list.insert_count();
  return res;
}

}  // namespace korder::testing
