#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "korder/types.hpp"

namespace korder {

// Undirected simple graph over dense ids 0..n-1. Neighbor lists are
// contiguous; an edge index keyed by the normalized pair gives O(1) expected
// membership and swap-with-last removal.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adjacency_(n) {}

  std::size_t vertex_count() const { return adjacency_.size(); }
  std::size_t edge_count() const { return index_.size(); }
  std::size_t degree(VertexId v) const { return adjacency_.at(v).size(); }
  std::span<const VertexId> neighbors(VertexId v) const { return adjacency_[v]; }
  // DEG(G), recomputed lazily after removals.
  std::size_t max_degree() const;

  // Both return false (and change nothing) for self-loops and for edges that
  // are already present/absent. Out-of-range ids throw std::out_of_range.
  bool add_edge(VertexId u, VertexId v);
  bool remove_edge(VertexId u, VertexId v);
  bool has_edge(VertexId u, VertexId v) const;

  // All edges with u < v, sorted.
  std::vector<Edge> edges() const;

  // Symmetry, loop-freedom, no duplicates, edge count = half the degree sum.
  bool check_invariants() const;

 private:
  struct Slots {
    std::uint32_t low;   // position of high in adjacency_[low]
    std::uint32_t high;  // position of low in adjacency_[high]
  };

  static std::uint64_t key(VertexId a, VertexId b) {
    return (std::uint64_t{a} << 32) | b;
  }
  void check_id(VertexId v) const;
  void detach(VertexId owner, std::uint32_t pos);

  std::vector<std::vector<VertexId>> adjacency_;
  std::unordered_map<std::uint64_t, Slots> index_;
  mutable std::size_t max_degree_ = 0;
  mutable bool max_degree_stale_ = false;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct LoadedGraph {
  Graph graph;
  // original_ids[i] is the id used in the file for compact vertex i.
  std::vector<std::uint64_t> original_ids;
};

// SNAP-style edge list: "u v" per line, '#' comments, blank lines ignored.
// Self-loops and repeated edges are dropped; ids are compacted in order of
// first appearance.
LoadedGraph load_edge_list(std::istream& in);
LoadedGraph load_edge_list(const std::filesystem::path& path);

void write_edge_list(std::ostream& out, const Graph& g);

// `count` distinct edges chosen uniformly at random; deterministic per seed.
EdgeBatch sample_edges(const Graph& g, std::size_t count, std::uint64_t seed);

}  // namespace korder
