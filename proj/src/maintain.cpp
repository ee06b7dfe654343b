#include "korder/maintain.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <stdexcept>
#include <unordered_set>
#include <utility>

namespace korder {

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::uint64_t elapsed_ns() const {
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(
                                          std::chrono::steady_clock::now() - start_)
                                          .count());
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string edge_name(VertexId u, VertexId v) {
  return "(" + std::to_string(u) + "," + std::to_string(v) + ")";
}

}  // namespace

OpStats& OpStats::operator+=(const OpStats& o) {
  v_star_size += o.v_star_size;
  v_plus_size += o.v_plus_size;
  e_plus += o.e_plus;
  e_star += o.e_star;
  relabels += o.relabels;
  order_inserts += o.order_inserts;
  rounds += o.rounds;
  skipped += o.skipped;
  dropped += o.dropped;
  elapsed_ns += o.elapsed_ns;
  return *this;
}

CoreMaintainer::CoreMaintainer(Graph g) : CoreMaintainer(g, decompose(g)) {}

CoreMaintainer::CoreMaintainer(Graph g, CoreState cs)
    : graph_(std::move(g)), state_(std::move(cs)) {
  const std::size_t n = graph_.vertex_count();
  if (state_.size() != n) throw std::invalid_argument("core state does not match graph");
  in_q_.assign(n, 0);
  in_r_.assign(n, 0);
  mcd_epoch_.assign(n, 0);
  mcd_value_.assign(n, 0);
  dequeued_epoch_.assign(n, 0);
  first_sum_.assign(n, 0);
}

void CoreMaintainer::check_vertex(VertexId v) const {
  if (v >= graph_.vertex_count()) {
    throw std::out_of_range("unknown vertex " + std::to_string(v));
  }
}

void CoreMaintainer::begin_op() {
  ++epoch_;
  heap_.clear();
  r_queue_.clear();
  r_head_ = 0;
  discovered_.clear();
  visited_.clear();
  changed_.clear();
  traced_.clear();
  skipped_ = 0;
}

std::vector<std::string> CoreMaintainer::take_trace_violations() {
  return std::exchange(trace_violations_, {});
}

std::uint32_t CoreMaintainer::mcd(VertexId v) const {
  check_vertex(v);
  const CoreValue k = state_.core[v];
  std::uint32_t count = 0;
  for (VertexId w : graph_.neighbors(v)) {
    if (state_.core[w] >= k) ++count;
  }
  return count;
}

std::uint32_t CoreMaintainer::cached_mcd(VertexId v) {
  if (mcd_epoch_[v] != epoch_) {
    mcd_value_[v] = mcd(v);
    mcd_epoch_[v] = epoch_;
  }
  return mcd_value_[v];
}

// Q is a binary min-heap keyed by live order queries. Vertices in Q are never
// relocated while queued, so the heap stays consistent across relabels.
void CoreMaintainer::push_q(VertexId v) {
  in_q_[v] = 1;
  heap_.push_back(v);
  std::push_heap(heap_.begin(), heap_.end(),
                 [this](VertexId a, VertexId b) { return state_.precedes(b, a); });
}

VertexId CoreMaintainer::pop_q() {
  std::pop_heap(heap_.begin(), heap_.end(),
                [this](VertexId a, VertexId b) { return state_.precedes(b, a); });
  const VertexId v = heap_.back();
  heap_.pop_back();
  in_q_[v] = 0;
  return v;
}

void CoreMaintainer::push_r(VertexId v) {
  in_r_[v] = 1;
  r_queue_.push_back(v);
}

OpStats CoreMaintainer::insert_edge(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("self-loop " + edge_name(u, v));
  if (graph_.has_edge(u, v)) throw std::invalid_argument("edge " + edge_name(u, v) + " already present");

  const Stopwatch clock;
  const std::uint64_t relabels_before = state_.order.relabel_count();
  const std::uint64_t inserts_before = state_.order.insert_count();
  OpStats stats;
  begin_op();

  graph_.add_edge(u, v);
  if (!state_.precedes(u, v)) std::swap(u, v);
  const CoreValue k = state_.core[u];
  if (++state_.deg_out[u] > k) {
    push_q(u);
    propagate();
    finish_insertion(stats);
  }

  stats.relabels = state_.order.relabel_count() - relabels_before;
  stats.order_inserts = state_.order.insert_count() - inserts_before;
  stats.elapsed_ns = clock.elapsed_ns();
  return stats;
}

void CoreMaintainer::propagate() {
  while (!heap_.empty()) {
    const VertexId w = pop_q();
    const CoreValue k = state_.core[w];
    const std::uint32_t sum = state_.deg_in[w] + state_.deg_out[w];
    if (tracing_) {
      dequeued_epoch_[w] = epoch_;
      first_sum_[w] = sum;
      traced_.push_back(w);
    }
    if (sum > k) {
      forward(w);
    } else if (state_.deg_in[w] > 0) {
      backward(w);
    } else {
      ++skipped_;
    }
  }
  if (tracing_) trace_check_final();
}

void CoreMaintainer::forward(VertexId w) {
  state_.color[w] = Color::kBlack;
  discovered_.push_back(w);
  visited_.push_back(w);
  const CoreValue k = state_.core[w];
  for (VertexId x : graph_.neighbors(w)) {
    if (state_.core[x] != k || !state_.precedes(w, x)) continue;
    ++state_.deg_in[x];
    if (tracing_ && dequeued_epoch_[x] == epoch_) {
      trace_violations_.push_back("deg_in of " + std::to_string(x) + " raised after its dequeue");
    }
    if (!in_q_[x]) push_q(x);
  }
}

void CoreMaintainer::backward(VertexId w) {
  state_.color[w] = Color::kGray;
  visited_.push_back(w);
  ItemHandle anchor = state_.handle(w);

  do_pre(w);
  state_.deg_out[w] += state_.deg_in[w];
  state_.deg_in[w] = 0;

  while (r_head_ < r_queue_.size()) {
    const VertexId u = r_queue_[r_head_++];
    in_r_[u] = 0;
    state_.color[u] = Color::kGray;
    do_pre(u);
    do_post(u);
    state_.order.erase_vertex(u);
    anchor = state_.order.insert_after(anchor, u);
    state_.deg_out[u] += state_.deg_in[u];
    state_.deg_in[u] = 0;
  }
  r_queue_.clear();
  r_head_ = 0;
}

// Predecessors of x still in V* lose x as a possible supporter. The core
// filter only matters for batches, where several K values coexist.
void CoreMaintainer::do_pre(VertexId x) {
  const CoreValue k = state_.core[x];
  for (VertexId v : graph_.neighbors(x)) {
    if (state_.color[v] != Color::kBlack || state_.core[v] != k || !state_.precedes(v, x)) continue;
    --state_.deg_out[v];
    if (state_.deg_in[v] + state_.deg_out[v] <= k && !in_r_[v]) push_r(v);
  }
}

void CoreMaintainer::do_post(VertexId x) {
  const CoreValue k = state_.core[x];
  for (VertexId v : graph_.neighbors(x)) {
    if (state_.core[v] != k || state_.deg_in[v] == 0 || !state_.precedes(x, v)) continue;
    --state_.deg_in[v];
    if (state_.color[v] == Color::kBlack && state_.deg_in[v] + state_.deg_out[v] <= k &&
        !in_r_[v]) {
      push_r(v);
    }
  }
}

void CoreMaintainer::trace_check_final() {
  for (VertexId w : traced_) {
    const std::uint32_t sum = state_.deg_in[w] + state_.deg_out[w];
    if (sum > first_sum_[w]) {
      trace_violations_.push_back("degree sum of " + std::to_string(w) + " grew after dequeue: " +
                                  std::to_string(first_sum_[w]) + " -> " + std::to_string(sum));
    }
  }
  for (VertexId w : visited_) {
    const std::uint32_t sum = state_.deg_in[w] + state_.deg_out[w];
    const bool candidate = sum > state_.core[w];
    if (candidate != (state_.color[w] == Color::kBlack)) {
      trace_violations_.push_back("vertex " + std::to_string(w) + " is " +
                                  (candidate ? "gray" : "black") + " with degree sum " +
                                  std::to_string(sum) + " against K = " +
                                  std::to_string(state_.core[w]));
    }
  }
}

void CoreMaintainer::finish_insertion(OpStats& stats) {
  for (VertexId w : discovered_) {
    if (state_.color[w] == Color::kBlack) changed_.push_back(w);
  }
  if (fault_ == Fault::kDropLastPromotion && !changed_.empty()) {
    state_.deg_in[changed_.back()] = 0;
    changed_.pop_back();
  }

  // Group by K keeping discovery order; each group goes to the head of
  // O_{K+1} in that order. Cores are bumped only after every group moved.
  std::stable_sort(changed_.begin(), changed_.end(), [this](VertexId a, VertexId b) {
    return state_.core[a] < state_.core[b];
  });
  for (std::size_t i = 0; i < changed_.size();) {
    const CoreValue k = state_.core[changed_[i]];
    state_.order.sentinel(k + 2);
    ItemHandle anchor = state_.order.sentinel(k + 1);
    for (; i < changed_.size() && state_.core[changed_[i]] == k; ++i) {
      const VertexId w = changed_[i];
      state_.order.erase_vertex(w);
      anchor = state_.order.insert_after(anchor, w);
    }
  }
  for (VertexId w : changed_) {
    ++state_.core[w];
    state_.deg_in[w] = 0;
  }
  for (VertexId w : visited_) state_.color[w] = Color::kWhite;

  stats.v_star_size += changed_.size();
  stats.v_plus_size += visited_.size();
  for (VertexId w : visited_) stats.e_plus += graph_.degree(w);
  for (VertexId w : changed_) stats.e_star += graph_.degree(w);
  stats.skipped += skipped_;
}

OpStats CoreMaintainer::remove_edge(VertexId u, VertexId v) {
  check_vertex(u);
  check_vertex(v);
  if (!graph_.has_edge(u, v)) throw std::invalid_argument("edge " + edge_name(u, v) + " absent");

  const Stopwatch clock;
  const std::uint64_t relabels_before = state_.order.relabel_count();
  const std::uint64_t inserts_before = state_.order.insert_count();
  OpStats stats;
  begin_op();

  const CoreValue k = std::min(state_.core[u], state_.core[v]);
  const VertexId tail = state_.precedes(u, v) ? u : v;
  graph_.remove_edge(u, v);
  --state_.deg_out[tail];

  if (k > 0) {
    for (VertexId w : {u, v}) {
      if (state_.core[w] == k && !in_r_[w] && cached_mcd(w) < k) push_r(w);
    }
    while (r_head_ < r_queue_.size()) {
      const VertexId w = r_queue_[r_head_++];
      in_r_[w] = 0;
      state_.color[w] = Color::kBlack;
      changed_.push_back(w);
      for (VertexId x : graph_.neighbors(w)) {
        if (state_.core[x] != k || state_.color[x] == Color::kBlack) continue;
        cached_mcd(x);
        if (--mcd_value_[x] < k && !in_r_[x]) push_r(x);
      }
    }
    r_queue_.clear();
    r_head_ = 0;

    // Surviving core-K neighbors that preceded a dropped vertex now follow it.
    if (fault_ != Fault::kSkipRemovalRepair) {
      for (VertexId w : changed_) {
        for (VertexId x : graph_.neighbors(w)) {
          if (state_.core[x] == k && state_.color[x] != Color::kBlack && state_.precedes(x, w)) {
            --state_.deg_out[x];
          }
        }
      }
    }
    // Discovery order keeps |post(w)| at most the mcd w had when dequeued,
    // which is below K.
    for (VertexId w : changed_) {
      state_.order.erase_vertex(w);
      state_.order.insert_into_block(k - 1, BlockEnd::kTail, w);
    }
    for (VertexId w : changed_) --state_.core[w];
    for (VertexId w : changed_) {
      std::uint32_t post = 0;
      for (VertexId x : graph_.neighbors(w)) {
        if (state_.precedes(w, x)) ++post;
      }
      state_.deg_out[w] = post;
      state_.color[w] = Color::kWhite;
    }
  }
  visited_ = changed_;

  stats.v_star_size = changed_.size();
  stats.v_plus_size = visited_.size();
  for (VertexId w : changed_) stats.e_star += graph_.degree(w);
  stats.e_plus = stats.e_star;
  stats.relabels = state_.order.relabel_count() - relabels_before;
  stats.order_inserts = state_.order.insert_count() - inserts_before;
  stats.elapsed_ns = clock.elapsed_ns();
  return stats;
}

OpStats CoreMaintainer::insert_batch(std::span<const Edge> batch) {
  const Stopwatch clock;
  const std::uint64_t relabels_before = state_.order.relabel_count();
  const std::uint64_t inserts_before = state_.order.insert_count();
  OpStats total;

  std::vector<Edge> pending;
  pending.reserve(batch.size());
  std::unordered_set<std::uint64_t> seen;
  for (const Edge& raw : batch) {
    check_vertex(raw.u);
    check_vertex(raw.v);
    const Edge e = raw.normalized();
    if (e.u == e.v || graph_.has_edge(e.u, e.v) ||
        !seen.insert((std::uint64_t{e.u} << 32) | e.v).second) {
      ++total.dropped;
      continue;
    }
    pending.push_back(e);
  }

  std::vector<VertexId> all_changed;
  std::vector<VertexId> all_visited;
  std::vector<Edge> deferred;
  while (!pending.empty()) {
    begin_op();
    ++total.rounds;
    deferred.clear();
    for (const Edge& e : pending) {
      VertexId t = e.u;
      VertexId h = e.v;
      if (!state_.precedes(t, h)) std::swap(t, h);
      if (state_.deg_out[t] > state_.core[t]) {
        deferred.push_back(e);
        continue;
      }
      graph_.add_edge(t, h);
      if (++state_.deg_out[t] == state_.core[t] + 1 && !in_q_[t]) push_q(t);
    }
    propagate();
    finish_insertion(total);
    all_changed.insert(all_changed.end(), changed_.begin(), changed_.end());
    all_visited.insert(all_visited.end(), visited_.begin(), visited_.end());
    pending.swap(deferred);
  }
  changed_ = std::move(all_changed);
  visited_ = std::move(all_visited);

  total.relabels = state_.order.relabel_count() - relabels_before;
  total.order_inserts = state_.order.insert_count() - inserts_before;
  total.elapsed_ns = clock.elapsed_ns();
  return total;
}

}  // namespace korder
