#include "korder/order_list.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace korder {

namespace {

using Wide = unsigned __int128;
constexpr Wide kLabelSpace = Wide{1} << 64;

}  // namespace

OrderList::OrderList(std::uint32_t max_core_hint) {
  const std::uint64_t count = std::uint64_t{max_core_hint} + 1;
  const Wide step = kLabelSpace / count;
  nodes_.reserve(count);
  sentinels_.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) {
    const std::uint32_t idx = allocate(Kind::kSentinel, static_cast<std::uint32_t>(k));
    nodes_[idx].label = static_cast<std::uint64_t>(step * k);
    nodes_[idx].prev = tail_.index();
    if (tail_) node(tail_).next = idx; else head_ = ItemHandle{idx};
    tail_ = ItemHandle{idx};
    sentinels_.push_back(tail_);
  }
}

OrderList OrderList::from_blocks(std::span<const std::vector<VertexId>> blocks,
                                 std::uint32_t min_blocks) {
  const std::size_t block_total = std::max<std::size_t>({blocks.size(), min_blocks, 1});
  std::size_t items = block_total;
  for (const auto& b : blocks) items += b.size();

  OrderList list(0);
  list.nodes_.clear();
  list.sentinels_.clear();
  list.head_ = list.tail_ = ItemHandle{};
  list.nodes_.reserve(items);
  list.sentinels_.reserve(block_total);

  const Wide step = kLabelSpace / items;
  std::uint64_t position = 0;
  auto push = [&](Kind kind, std::uint32_t payload) {
    const std::uint32_t idx = list.allocate(kind, payload);
    list.nodes_[idx].label = static_cast<std::uint64_t>(step * position++);
    list.nodes_[idx].prev = list.tail_.index();
    if (list.tail_) list.node(list.tail_).next = idx; else list.head_ = ItemHandle{idx};
    list.tail_ = ItemHandle{idx};
    return list.tail_;
  };
  for (std::size_t k = 0; k < block_total; ++k) {
    list.sentinels_.push_back(push(Kind::kSentinel, static_cast<std::uint32_t>(k)));
    if (k >= blocks.size()) continue;
    for (VertexId v : blocks[k]) {
      if (list.contains(v)) {
        throw std::invalid_argument("vertex " + std::to_string(v) + " listed twice");
      }
      list.bind_vertex(v, push(Kind::kVertex, v));
    }
  }
  return list;
}

bool OrderList::precedes(ItemHandle x, ItemHandle y) const {
  assert(x && y && node(x).kind != Kind::kFree && node(y).kind != Kind::kFree);
  return node(x).label < node(y).label;
}

ItemHandle OrderList::insert_after(ItemHandle x, VertexId v) {
  assert(x && node(x).kind != Kind::kFree);
  if (contains(v)) {
    throw std::invalid_argument("vertex " + std::to_string(v) + " already in order list");
  }
  const ItemHandle h = link_after(x, Kind::kVertex, v);
  bind_vertex(v, h);
  return h;
}

ItemHandle OrderList::insert_before(ItemHandle x, VertexId v) {
  assert(x && node(x).kind != Kind::kFree);
  const ItemHandle p = prev(x);
  if (!p) throw std::invalid_argument("cannot insert before the first sentinel");
  return insert_after(p, v);
}

ItemHandle OrderList::insert_into_block(std::uint32_t k, BlockEnd end, VertexId v) {
  if (end == BlockEnd::kHead) return insert_after(sentinel(k), v);
  sentinel(k);
  if (k + 1 < block_count()) return insert_before(sentinels_[k + 1], v);
  return insert_after(tail_, v);
}

void OrderList::erase(ItemHandle x) {
  assert(x && node(x).kind == Kind::kVertex);
  Node& n = node(x);
  if (n.prev != ItemHandle::kInvalid) nodes_[n.prev].next = n.next; else head_ = ItemHandle{n.next};
  if (n.next != ItemHandle::kInvalid) nodes_[n.next].prev = n.prev; else tail_ = ItemHandle{n.prev};
  by_vertex_[n.payload] = ItemHandle{};
  n = Node{};
  free_.push_back(x.index());
  --live_vertices_;
}

ItemHandle OrderList::sentinel(std::uint32_t k) {
  while (k >= sentinels_.size()) append_sentinel();
  return sentinels_[k];
}

ItemHandle OrderList::sentinel(std::uint32_t k) const {
  assert(k < sentinels_.size());
  return sentinels_[k];
}

std::vector<VertexId> OrderList::vertices() const {
  std::vector<VertexId> out;
  out.reserve(live_vertices_);
  for (ItemHandle h = head_; h; h = next(h)) {
    if (node(h).kind == Kind::kVertex) out.push_back(node(h).payload);
  }
  return out;
}

std::vector<VertexId> OrderList::block(std::uint32_t k) const {
  std::vector<VertexId> out;
  if (k >= sentinels_.size()) return out;
  for (ItemHandle h = next(sentinels_[k]); h && node(h).kind != Kind::kSentinel; h = next(h)) {
    out.push_back(node(h).payload);
  }
  return out;
}

bool OrderList::labels_consistent() const {
  std::size_t vertices_seen = 0;
  ItemHandle last;
  for (ItemHandle h = head_; h; h = next(h)) {
    const Node& n = node(h);
    if (n.kind == Kind::kFree) return false;
    if (n.prev != last.index()) return false;
    if (last && node(last).label >= n.label) return false;
    if (n.kind == Kind::kVertex) {
      ++vertices_seen;
      if (handle_of(n.payload) != h) return false;
    }
    last = h;
  }
  return last == tail_ && vertices_seen == live_vertices_;
}

std::uint32_t OrderList::allocate(Kind kind, std::uint32_t payload) {
  std::uint32_t idx;
  if (!free_.empty()) {
    idx = free_.back();
    free_.pop_back();
  } else {
    idx = static_cast<std::uint32_t>(nodes_.size());
    nodes_.emplace_back();
  }
  nodes_[idx].kind = kind;
  nodes_[idx].payload = payload;
  return idx;
}

ItemHandle OrderList::link_after(ItemHandle x, Kind kind, std::uint32_t payload) {
  const std::uint64_t label = place_after(x);
  const std::uint32_t idx = allocate(kind, payload);
  Node& n = nodes_[idx];
  Node& left = node(x);
  n.label = label;
  n.prev = x.index();
  n.next = left.next;
  if (left.next != ItemHandle::kInvalid) nodes_[left.next].prev = idx; else tail_ = ItemHandle{idx};
  left.next = idx;
  ++insert_count_;
  return ItemHandle{idx};
}

void OrderList::append_sentinel() {
  const auto k = static_cast<std::uint32_t>(sentinels_.size());
  sentinels_.push_back(link_after(tail_, Kind::kSentinel, k));
}

std::uint64_t OrderList::place_after(ItemHandle x) {
  const Wide lo = node(x).label;
  const ItemHandle succ = next(x);
  const Wide hi = succ ? Wide{node(succ).label} : kLabelSpace;
  if (hi - lo >= 2) return static_cast<std::uint64_t>(lo + (hi - lo) / 2);

  // Grow an aligned window around x until it is sparse enough, then spread.
  ItemHandle left = x;
  ItemHandle right = x;
  std::uint64_t count = 1;
  const double ratio = 2.0 / kOverflowBase;
  for (int level = 1; level <= 64; ++level) {
    const Wide size = Wide{1} << level;
    const Wide base = lo & ~(size - 1);
    for (ItemHandle p = prev(left); p && Wide{node(p).label} >= base; p = prev(left)) {
      left = p;
      ++count;
    }
    for (ItemHandle s = next(right); s && Wide{node(s).label} < base + size; s = next(right)) {
      right = s;
      ++count;
    }
    const double allowed = std::pow(ratio, level);
    if (static_cast<double>(count + 1) > allowed && level < 64) continue;

    const Wide step = size / (count + 1);
    Wide slot = base;
    std::uint64_t placed = 0;
    for (ItemHandle h = left;; h = next(h)) {
      Node& n = node(h);
      const auto fresh = static_cast<std::uint64_t>(slot);
      if (n.label != fresh) {
        n.label = fresh;
        ++relabel_count_;
      }
      slot += step;
      if (h == x) {
        placed = static_cast<std::uint64_t>(slot);
        slot += step;
      }
      if (h == right) break;
    }
    return placed;
  }
  throw std::logic_error("order list label space exhausted");
}

void OrderList::bind_vertex(VertexId v, ItemHandle h) {
  if (v >= by_vertex_.size()) by_vertex_.resize(std::size_t{v} + 1);
  by_vertex_[v] = h;
  ++live_vertices_;
}

}  // namespace korder
