#include <cmath>
#include <set>
#include <sstream>

#include <doctest.h>

#include "radiosim/graph.hpp"

using namespace radiosim;

TEST_CASE("gnp degenerate probabilities") {
  CHECK(gen_gnp_directed(8, 0.0, 1).edge_count() == 0);
  CHECK(gen_gnp_directed(8, 1.0, 1).edge_count() == 56);
  CHECK(gen_gnp_directed(1, 0.5, 1).edge_count() == 0);
  CHECK_THROWS_AS(gen_gnp_directed(0, 0.5, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_gnp_directed(4, 1.5, 1), std::invalid_argument);
}

TEST_CASE("gnp has no self loops or duplicate edges") {
  const DirectedGraph g = gen_gnp_directed(64, 0.3, 9);
  for (NodeId u = 0; u < g.n; ++u) {
    std::set<NodeId> seen;
    for (NodeId v : g.out_edges[u]) {
      CHECK(v != u);
      CHECK(v < g.n);
      CHECK(seen.insert(v).second);
    }
  }
}

TEST_CASE("gnp edge count concentrates around n(n-1)p") {
  const std::uint32_t n = 1024;
  const double p = 0.0677;
  const DirectedGraph g = gen_gnp_directed(n, p, 2024);
  const double mean = static_cast<double>(n) * (n - 1) * p;
  const double sigma = std::sqrt(mean * (1 - p));
  CHECK(std::abs(static_cast<double>(g.edge_count()) - mean) < 5 * sigma);
}

TEST_CASE("gnp is reproducible per seed") {
  const DirectedGraph a = gen_gnp_directed(128, 0.1, 5);
  const DirectedGraph b = gen_gnp_directed(128, 0.1, 5);
  const DirectedGraph c = gen_gnp_directed(128, 0.1, 6);
  CHECK(a.out_edges == b.out_edges);
  CHECK(a.out_edges != c.out_edges);
}

TEST_CASE("lowerbound network layout") {
  const DirectedGraph g = gen_lowerbound_network(16, 20);
  // Stars: 4 centers + 2+4+8+16 leaves = 34 nodes; path of 12 edges adds 13.
  CHECK(g.n == 47);
  CHECK(g.labels.at(0) == "center:1");
  CHECK(bfs_eccentricity(g, 0) == 20);

  std::uint32_t centers = 0, leaves = 0, path = 0;
  for (const auto& [node, role] : g.labels) {
    if (role.rfind("center:", 0) == 0) ++centers;
    else if (role.rfind("leaf:", 0) == 0) ++leaves;
    else if (role.rfind("path:", 0) == 0) ++path;
  }
  CHECK(centers == 4);
  CHECK(leaves == 30);
  CHECK(path == 13);

  CHECK_THROWS_AS(gen_lowerbound_network(12, 40), std::invalid_argument);
  CHECK_THROWS_AS(gen_lowerbound_network(16, 16), std::invalid_argument);
}

TEST_CASE("dumbbell layout") {
  const DirectedGraph g = gen_star_dumbbell(4);
  CHECK(g.n == 13);
  CHECK(g.edge_count() == 16);
  CHECK(g.labels.at(0) == "source");
  CHECK(g.out_edges[0].size() == 8);

  const auto in = g.in_edges();
  for (std::uint32_t i = 1; i <= 4; ++i) {
    const NodeId dest = 8 + i;
    CHECK(g.labels.at(dest) == "dest:" + std::to_string(i));
    REQUIRE(in[dest].size() == 2);
    CHECK(in[dest][0] == 2 * i - 1);
    CHECK(in[dest][1] == 2 * i);
  }
}

TEST_CASE("bfs eccentricity") {
  DirectedGraph path;
  path.n = 4;
  path.out_edges = {{1}, {2}, {3}, {}};
  CHECK(bfs_eccentricity(path, 0) == 3);
  CHECK_FALSE(bfs_eccentricity(path, 1).has_value());  // node 0 unreachable

  DirectedGraph cycle;
  cycle.n = 3;
  cycle.out_edges = {{1}, {2}, {0}};
  CHECK(bfs_eccentricity(cycle, 0) == 2);
}

TEST_CASE("graph file round trip") {
  const DirectedGraph g = gen_lowerbound_network(4, 12);
  std::stringstream ss;
  write_graph(ss, g);
  const DirectedGraph back = read_graph(ss);
  CHECK(back.n == g.n);
  CHECK(back.out_edges == g.out_edges);
  CHECK(back.labels == g.labels);
}

TEST_CASE("graph reader rejects bad input") {
  {
    std::stringstream ss("radiograph v2 2 0\n");
    CHECK_THROWS_AS(read_graph(ss), std::runtime_error);
  }
  {
    std::stringstream ss("not-a-graph v1 2 0\n");
    CHECK_THROWS_AS(read_graph(ss), std::runtime_error);
  }
  {
    std::stringstream ss("radiograph v1 2 1\n0 5\n");
    CHECK_THROWS_AS(read_graph(ss), std::runtime_error);
  }
  {
    std::stringstream ss("radiograph v1 2 2\n0 1\n");
    CHECK_THROWS_AS(read_graph(ss), std::runtime_error);
  }
}

TEST_CASE("summarize_graph basics") {
  const GraphSummary s = summarize_graph(gen_star_dumbbell(4));
  CHECK(s.n == 13);
  CHECK(s.edges == 16);
  CHECK(s.source_eccentricity == 2);
}
