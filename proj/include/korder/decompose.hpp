#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "korder/graph.hpp"
#include "korder/order_list.hpp"
#include "korder/types.hpp"

namespace korder {

enum class Color : std::uint8_t { kWhite, kGray, kBlack };

// Per-vertex maintenance state plus the k-order it is defined against.
//
// Between public operations: deg_in = 0, color = white, deg_out(v) equals the
// number of neighbors after v in the order, that number is at most core(v),
// and v sits in block O_core(v).
struct CoreState {
  std::vector<CoreValue> core;
  std::vector<std::uint32_t> deg_out;
  std::vector<std::uint32_t> deg_in;
  std::vector<Color> color;
  OrderList order;

  std::size_t size() const { return core.size(); }
  ItemHandle handle(VertexId v) const { return order.handle_of(v); }
  bool precedes(VertexId a, VertexId b) const { return order.precedes(a, b); }
  CoreValue max_core() const;
};

// Bucket-queue peeling in O(n + m). Vertices start bucketed by degree in id
// order; a vertex whose residual degree drops moves to the back of the next
// lower bucket. Returns the removal order and fills `core`; `deg_out`, if
// given, gets each vertex's count of neighbors removed after it.
std::vector<VertexId> peeling_order(const Graph& g, std::vector<CoreValue>& core,
                                    std::vector<std::uint32_t>* deg_out = nullptr);

// Cores, k-order with sentinels for 0..max_core+1, deg_out = |post|.
CoreState decompose(const Graph& g);

struct StateViolation {
  enum class Kind {
    kMissingItem,
    kBlock,
    kDegOut,
    kDegIn,
    kColor,
    kOutDegreeBound,
    kLabels,
  };
  Kind kind;
  VertexId vertex;
  std::string detail;
};

const char* to_string(StateViolation::Kind kind);

// Recomputes every quiescent-state obligation from scratch; empty iff all hold.
// This checks necessary conditions for a valid k-order only.
std::vector<StateViolation> validate_quiescent(const CoreState& cs, const Graph& g);

}  // namespace korder
