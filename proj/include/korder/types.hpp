#pragma once

#include <compare>
#include <cstdint>
#include <vector>

namespace korder {

using VertexId = std::uint32_t;
using CoreValue = std::uint32_t;

// Undirected edge; normalized() puts the smaller id first.
struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  Edge normalized() const { return u < v ? Edge{u, v} : Edge{v, u}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

using EdgeBatch = std::vector<Edge>;

}  // namespace korder
