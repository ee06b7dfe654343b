#include "doctest.h"

#include <sstream>
#include <stdexcept>

#include "korder/graph.hpp"
#include "support.hpp"

using namespace korder;

TEST_CASE("add and remove keep adjacency and index in step") {
  Graph g(4);
  CHECK(g.add_edge(0, 1));
  CHECK(g.add_edge(2, 1));
  CHECK_FALSE(g.add_edge(1, 0));
  CHECK_FALSE(g.add_edge(3, 3));
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(1, 2));
  CHECK(g.degree(1) == 2);
  CHECK(g.max_degree() == 2);
  CHECK(g.remove_edge(1, 0));
  CHECK_FALSE(g.remove_edge(0, 1));
  CHECK(g.degree(1) == 1);
  CHECK(g.max_degree() == 1);
  CHECK(g.check_invariants());
  CHECK_THROWS_AS(g.add_edge(0, 9), std::out_of_range);
}

TEST_CASE("random churn keeps invariants") {
  Graph g(30);
  Rng rng(7);
  for (int i = 0; i < 5000; ++i) {
    auto u = static_cast<VertexId>(rng.below(30));
    auto v = static_cast<VertexId>(rng.below(30));
    if (rng.below(2)) g.add_edge(u, v); else g.remove_edge(u, v);
  }
  CHECK(g.check_invariants());
  std::size_t sum = 0;
  for (VertexId v = 0; v < 30; ++v) sum += g.degree(v);
  CHECK(sum == 2 * g.edge_count());
}

TEST_CASE("edge list parsing compacts ids by first appearance") {
  std::istringstream in("# comment\n\n100 7\n7 42 extra tokens\n42 100\n100 7\n5 5\n");
  auto loaded = load_edge_list(in);
  CHECK(loaded.graph.vertex_count() == 4);
  CHECK(loaded.original_ids == std::vector<std::uint64_t>{100, 7, 42, 5});
  CHECK(loaded.graph.edge_count() == 3);
  CHECK(loaded.graph.degree(3) == 0);
}

TEST_CASE("malformed lines report their line number") {
  std::istringstream in("1 2\n3 x\n");
  try {
    load_edge_list(in);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  std::istringstream single("1\n");
  CHECK_THROWS_AS(load_edge_list(single), ParseError);
}

TEST_CASE("empty input yields the empty graph") {
  std::istringstream in("");
  auto loaded = load_edge_list(in);
  CHECK(loaded.graph.vertex_count() == 0);
  CHECK(loaded.graph.edge_count() == 0);
}

TEST_CASE("write then load round-trips") {
  auto g = testing::graph_from(5, {{0, 1}, {1, 2}, {3, 4}, {0, 4}});
  std::stringstream buf;
  write_edge_list(buf, g);
  auto back = load_edge_list(buf).graph;
  CHECK(back.edge_count() == 4);
}

TEST_CASE("sampling is deterministic and bounded") {
  auto g = testing::complete_graph(10);
  auto a = sample_edges(g, 20, 3);
  auto b = sample_edges(g, 20, 3);
  CHECK(a == b);
  CHECK(a.size() == 20);
  std::sort(a.begin(), a.end());
  CHECK(std::adjacent_find(a.begin(), a.end()) == a.end());
  for (const Edge& e : a) CHECK(g.has_edge(e.u, e.v));
  CHECK(sample_edges(g, 0, 1).empty());
  CHECK_THROWS_AS(sample_edges(g, 46, 1), std::invalid_argument);
}
