#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "korder/types.hpp"

namespace korder {

// Opaque reference to one item of an OrderList. Stays valid from insertion
// until the item is erased; the label behind it may change on relabel.
class ItemHandle {
 public:
  static constexpr std::uint32_t kInvalid = std::numeric_limits<std::uint32_t>::max();

  constexpr ItemHandle() = default;
  constexpr explicit ItemHandle(std::uint32_t index) : index_(index) {}

  constexpr std::uint32_t index() const { return index_; }
  constexpr bool valid() const { return index_ != kInvalid; }
  constexpr explicit operator bool() const { return valid(); }
  friend constexpr bool operator==(ItemHandle, ItemHandle) = default;

 private:
  std::uint32_t index_ = kInvalid;
};

enum class BlockEnd { kHead, kTail };

// Total order O = O_0 O_1 O_2 ... over vertices, kept as one doubly linked
// list of 64-bit labels. Block O_k starts right after sentinel(k) and runs up
// to sentinel(k+1) (or the end of the list for the topmost block).
//
// Insertion uses single-level list labeling: when there is no free label
// between an item and its successor, the smallest aligned label window around
// the item whose density is below (2/T)^level, T = 1.5, is spread evenly.
class OrderList {
 public:
  static constexpr double kOverflowBase = 1.5;

  // Sentinels for blocks 0..max_core_hint, evenly spaced over the label range.
  explicit OrderList(std::uint32_t max_core_hint = 0);

  // Bulk layout: blocks[k] lists the vertices of O_k in order. Sentinels are
  // created for 0..max(blocks.size() - 1, min_blocks - 1).
  static OrderList from_blocks(std::span<const std::vector<VertexId>> blocks,
                               std::uint32_t min_blocks = 0);

  bool precedes(ItemHandle x, ItemHandle y) const;
  bool precedes(VertexId a, VertexId b) const { return precedes(handle_of(a), handle_of(b)); }

  // Throws std::invalid_argument if v already has a live item.
  ItemHandle insert_after(ItemHandle x, VertexId v);
  ItemHandle insert_before(ItemHandle x, VertexId v);
  ItemHandle insert_into_block(std::uint32_t k, BlockEnd end, VertexId v);

  // Removes a vertex item. Labels of other items are untouched.
  void erase(ItemHandle x);
  void erase_vertex(VertexId v) { erase(handle_of(v)); }

  // Sentinel starting block O_k; creates missing sentinels at the list end.
  ItemHandle sentinel(std::uint32_t k);
  ItemHandle sentinel(std::uint32_t k) const;
  std::uint32_t block_count() const { return static_cast<std::uint32_t>(sentinels_.size()); }

  ItemHandle handle_of(VertexId v) const {
    return v < by_vertex_.size() ? by_vertex_[v] : ItemHandle{};
  }
  bool contains(VertexId v) const { return handle_of(v).valid(); }

  ItemHandle front() const { return head_; }
  ItemHandle back() const { return tail_; }
  ItemHandle next(ItemHandle x) const { return ItemHandle{node(x).next}; }
  ItemHandle prev(ItemHandle x) const { return ItemHandle{node(x).prev}; }
  std::uint64_t label(ItemHandle x) const { return node(x).label; }
  bool is_sentinel(ItemHandle x) const { return node(x).kind == Kind::kSentinel; }
  // Vertex id for vertex items, block index for sentinels.
  std::uint32_t payload(ItemHandle x) const { return node(x).payload; }

  std::size_t vertex_count() const { return live_vertices_; }
  std::uint64_t relabel_count() const { return relabel_count_; }
  std::uint64_t insert_count() const { return insert_count_; }

  // Vertices in list order, sentinels skipped.
  std::vector<VertexId> vertices() const;
  // Vertices of block O_k in order.
  std::vector<VertexId> block(std::uint32_t k) const;
  // True when labels strictly increase along the list and links are symmetric.
  bool labels_consistent() const;

 private:
  enum class Kind : std::uint8_t { kFree, kVertex, kSentinel };

  struct Node {
    std::uint64_t label = 0;
    std::uint32_t prev = ItemHandle::kInvalid;
    std::uint32_t next = ItemHandle::kInvalid;
    std::uint32_t payload = 0;
    Kind kind = Kind::kFree;
  };

  const Node& node(ItemHandle x) const { return nodes_[x.index()]; }
  Node& node(ItemHandle x) { return nodes_[x.index()]; }

  std::uint32_t allocate(Kind kind, std::uint32_t payload);
  ItemHandle link_after(ItemHandle x, Kind kind, std::uint32_t payload);
  void append_sentinel();
  // Makes room right after x; returns the label for the new item.
  std::uint64_t place_after(ItemHandle x);
  void bind_vertex(VertexId v, ItemHandle h);

  std::vector<Node> nodes_;
  std::vector<std::uint32_t> free_;
  std::vector<ItemHandle> sentinels_;
  std::vector<ItemHandle> by_vertex_;
  ItemHandle head_;
  ItemHandle tail_;
  std::size_t live_vertices_ = 0;
  std::uint64_t relabel_count_ = 0;
  std::uint64_t insert_count_ = 0;
};

}  // namespace korder
