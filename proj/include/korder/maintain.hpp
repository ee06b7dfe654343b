#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "korder/decompose.hpp"
#include "korder/graph.hpp"
#include "korder/types.hpp"

namespace korder {

struct OpStats {
  std::uint64_t v_star_size = 0;   // |V*|: vertices whose core changed
  std::uint64_t v_plus_size = 0;   // |V+|: vertices processed by Forward/Backward
  std::uint64_t e_plus = 0;        // sum of degrees over V+
  std::uint64_t e_star = 0;        // sum of degrees over V*
  std::uint64_t relabels = 0;      // order-list label reassignments
  std::uint64_t order_inserts = 0; // order-list insertions
  std::uint64_t rounds = 0;        // batch rounds
  std::uint64_t skipped = 0;       // dequeued with deg_in = 0 and left untouched
  std::uint64_t dropped = 0;       // batch edges ignored (loops, duplicates, present)
  std::uint64_t elapsed_ns = 0;

  OpStats& operator+=(const OpStats& o);
};

// Test hook: deliberately broken behavior so the fuzz harness can prove it
// notices.
enum class Fault { kNone, kDropLastPromotion, kSkipRemovalRepair };

// Single-writer engine that keeps core numbers, the k-order and the
// deg_out/deg_in bookkeeping of a graph current across edge updates.
class CoreMaintainer {
 public:
  explicit CoreMaintainer(Graph g);
  CoreMaintainer(Graph g, CoreState cs);

  const Graph& graph() const { return graph_; }
  const CoreState& state() const { return state_; }
  CoreValue core(VertexId v) const { return state_.core.at(v); }
  std::span<const CoreValue> cores() const { return state_.core; }

  // Throws std::invalid_argument if the edge exists or u == v, and
  // std::out_of_range for unknown vertices.
  OpStats insert_edge(VertexId u, VertexId v);
  // Throws std::invalid_argument if the edge is absent.
  OpStats remove_edge(VertexId u, VertexId v);
  // Loops, in-batch duplicates and already-present edges are dropped and
  // counted in OpStats::dropped.
  OpStats insert_batch(std::span<const Edge> batch);

  // Vertices whose core changed in the last operation, in discovery order.
  std::span<const VertexId> last_changed() const { return changed_; }
  // Vertices processed by Forward/Backward (insertion) or dequeued (removal).
  std::span<const VertexId> last_visited() const { return visited_; }

  // When enabled, insertion records breaches of the degree-sum rules that
  // the propagation relies on; see take_trace_violations().
  void set_tracing(bool on) { tracing_ = on; }
  std::vector<std::string> take_trace_violations();

  void set_fault(Fault f) { fault_ = f; }

  // Max-core degree: neighbors w with core(w) >= core(v).
  std::uint32_t mcd(VertexId v) const;

 private:
  void check_vertex(VertexId v) const;
  // mcd cached for the current operation epoch; removal decrements it in place.
  std::uint32_t cached_mcd(VertexId v);
  void begin_op();
  void push_q(VertexId v);
  VertexId pop_q();
  void push_r(VertexId v);
  void propagate();
  void forward(VertexId w);
  void backward(VertexId w);
  void do_pre(VertexId x);
  void do_post(VertexId x);
  // Promotes surviving black vertices and restores white/deg_in = 0.
  void finish_insertion(OpStats& stats);
  void trace_check_final();

  Graph graph_;
  CoreState state_;

  // Workset, sized to n and reset lazily per operation.
  std::vector<VertexId> heap_;
  std::vector<std::uint8_t> in_q_;
  std::vector<VertexId> r_queue_;
  std::size_t r_head_ = 0;
  std::vector<std::uint8_t> in_r_;
  std::vector<VertexId> discovered_;  // Forward order; evicted entries are gray
  std::vector<VertexId> visited_;
  std::vector<VertexId> changed_;
  std::uint64_t skipped_ = 0;

  std::uint64_t epoch_ = 0;
  std::vector<std::uint64_t> mcd_epoch_;
  std::vector<std::uint32_t> mcd_value_;

  bool tracing_ = false;
  std::vector<std::uint64_t> dequeued_epoch_;
  std::vector<std::uint32_t> first_sum_;
  std::vector<VertexId> traced_;
  std::vector<std::string> trace_violations_;

  Fault fault_ = Fault::kNone;
};

}  // namespace korder
