#include "doctest.h"

#include "korder/decompose.hpp"
#include "korder/oracle.hpp"
#include "support.hpp"

using namespace korder;

TEST_CASE("path of three orders the middle vertex last") {
  // a=0, b=1, c=2 with edges a-b, b-c: all cores 1, order a, c, b.
  auto g = testing::graph_from(3, {{0, 1}, {1, 2}});
  std::vector<CoreValue> core;
  CHECK(peeling_order(g, core) == std::vector<VertexId>{0, 2, 1});
  CHECK(core == std::vector<CoreValue>{1, 1, 1});
  auto cs = decompose(g);
  CHECK(cs.deg_out == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(validate_quiescent(cs, g).empty());
}

TEST_CASE("triangle with pendant") {
  auto g = testing::graph_from(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  auto cs = decompose(g);
  CHECK(cs.core == std::vector<CoreValue>{2, 2, 2, 1});
  CHECK(cs.order.block(1) == std::vector<VertexId>{3});
  CHECK(cs.order.block(2).size() == 3);
  CHECK(validate_quiescent(cs, g).empty());
}

TEST_CASE("isolated vertices and the empty graph") {
  auto cs = decompose(Graph(3));
  CHECK(cs.core == std::vector<CoreValue>{0, 0, 0});
  CHECK(cs.order.block(0).size() == 3);
  auto empty = decompose(Graph());
  CHECK(empty.size() == 0);
  CHECK(empty.max_core() == 0);
}

TEST_CASE("complete graph K6 has core 5") {
  auto g = testing::complete_graph(6);
  auto cs = decompose(g);
  for (auto c : cs.core) CHECK(c == 5);
  CHECK(validate_quiescent(cs, g).empty());
}

TEST_CASE("agrees with iterated deletion on random graphs") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const std::size_t n = 20 + seed * 3;
    auto g = oracle::random_graph(n, n * (1 + seed % 5), seed);
    auto cs = decompose(g);
    INFO("seed " << seed);
    CHECK(cs.core == oracle::naive_cores(g));
    CHECK(validate_quiescent(cs, g).empty());
  }
}

TEST_CASE("validator flags each kind of corruption") {
  auto g = testing::graph_from(4, {{0, 1}, {1, 2}, {0, 2}, {2, 3}});
  using Kind = StateViolation::Kind;
  auto has = [](const std::vector<StateViolation>& vs, Kind k) {
    for (const auto& v : vs) if (v.kind == k) return true;
    return false;
  };
  {
    auto cs = decompose(g);
    cs.deg_out[0] += 1;
    CHECK(has(validate_quiescent(cs, g), Kind::kDegOut));
  }
  {
    auto cs = decompose(g);
    cs.deg_in[1] = 2;
    CHECK(has(validate_quiescent(cs, g), Kind::kDegIn));
  }
  {
    auto cs = decompose(g);
    cs.color[2] = Color::kBlack;
    CHECK(has(validate_quiescent(cs, g), Kind::kColor));
  }
  {
    auto cs = decompose(g);
    cs.core[3] = 2;
    CHECK(has(validate_quiescent(cs, g), Kind::kBlock));
  }
  {
    auto cs = decompose(g);
    cs.order.erase_vertex(3);
    CHECK(has(validate_quiescent(cs, g), Kind::kMissingItem));
  }
  {
    // Move the pendant's neighbor to the front: it now has 3 successors.
    auto cs = decompose(g);
    cs.order.erase_vertex(2);
    cs.order.insert_into_block(1, BlockEnd::kHead, 2);
    cs.core[2] = 1;
    auto vs = validate_quiescent(cs, g);
    CHECK(has(vs, Kind::kOutDegreeBound));
  }
}
