#include <set>
#include <sstream>

#include <doctest.h>

#include "f2m/errors.hpp"
#include "f2m/graph.hpp"
#include "test_support.hpp"

using namespace f2m;
using namespace f2m::test;

TEST_CASE("k >= n-1 yields the complete graph") {
  const Instance square = unit_square();
  const Graph g = build_knn_graph(square, 3);
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 6);
  const GraphReport report = validate_graph(g);
  CHECK(report.min_degree == 3);
  CHECK(report.max_degree == 3);

  const Instance inst = generate_instance(9, 5, 50.0);
  CHECK(build_knn_graph(inst, 8).edge_count() == 9 * 8 / 2);
  CHECK(build_knn_graph(inst, 30).edge_count() == 9 * 8 / 2);
}

TEST_CASE("k = 20 guarantees degree 20 past the paper's VLSI setting") {
  const Instance inst = generate_instance(50, 12, 200.0);
  const Graph g = build_knn_graph(inst, 20);
  for (int v = 0; v < g.node_count(); ++v) CHECK(g.degree(v) >= 20);
}

TEST_CASE("build_knn_graph argument guards") {
  const Instance inst = generate_instance(10, 1);
  CHECK_THROWS_AS(build_knn_graph(inst, 2), ArgumentError);
  CHECK_THROWS_AS(build_knn_graph(generate_instance(3, 1), 3), ArgumentError);
}

TEST_CASE("bucketed k-NN matches the quadratic scan") {
  for (const std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    for (const int n : {30, 150, 700}) {
      for (const int k : {3, 6, 20}) {
        Instance inst = generate_instance(n, seed, 100.0);
        CHECK(same_edges(build_knn_graph(inst, k), knn_graph_scan(inst, k)));
        inst.mode = DistanceMode::kEuc2dRounded;  // heavy ties
        CHECK(same_edges(build_knn_graph(inst, k), knn_graph_scan(inst, k)));
      }
    }
  }
}

TEST_CASE("k-NN handles extremely elongated point sets") {
  Instance inst;
  inst.mode = DistanceMode::kEuc2dExact;
  SplitMix64 rng(55);
  for (int i = 0; i < 200; ++i) {
    inst.points.push_back({rng.next_double() * 1e6, rng.next_double() * 1e-6});
  }
  CHECK(same_edges(build_knn_graph(inst, 4), knn_graph_scan(inst, 4)));
}

TEST_CASE("k-NN handles clustered and coincident points") {
  Instance inst;
  inst.mode = DistanceMode::kEuc2dExact;
  // two tight clusters plus duplicates
  for (int i = 0; i < 12; ++i) {
    inst.points.push_back({0.001 * i, 0.0});
    inst.points.push_back({500.0, 500.0 + 0.001 * (i % 3)});
  }
  const Graph g = build_knn_graph(inst, 4);
  CHECK(same_edges(g, knn_graph_scan(inst, 4)));
  for (int v = 0; v < g.node_count(); ++v) CHECK(g.degree(v) >= 4);
}

TEST_CASE("edge costs match the instance distance mode") {
  Instance inst = generate_instance(60, 9, 10.0);
  inst.mode = DistanceMode::kEuc2dRounded;
  const Graph g = build_knn_graph(inst, 5);
  for (const GraphEdge& e : g.edges()) {
    CHECK(e.cost == distance(inst, e.u, e.v));
  }
}

TEST_CASE("construction is deterministic across thread counts") {
  const Instance inst = generate_instance(2000, 17, 300.0);
  const Graph a = build_knn_graph(inst, 6, 1);
  const Graph b = build_knn_graph(inst, 6, 8);
  CHECK(same_edges(a, b));
}

TEST_CASE("validate_graph flags structural defects") {
  // degree 2 everywhere: triangle
  Instance tri;
  tri.mode = DistanceMode::kEuc2dExact;
  tri.points = {{0, 0}, {3, 0}, {0, 4}};
  CHECK_THROWS_AS(validate_graph(complete_graph(tri)), MinDegreeError);

  const Graph dup = Graph::from_edges(
      4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1}, {0, 2, 1}, {1, 3, 1}, {1, 2, 1}});
  CHECK_THROWS_AS(validate_graph(dup), StructureError);

  const Graph loop = Graph::from_edges(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {0, 3, 1},
                                           {0, 2, 1}, {1, 3, 1}, {2, 2, 0}});
  CHECK_THROWS_AS(validate_graph(loop), StructureError);
}

TEST_CASE("edge dump lists one line per edge") {
  const Graph g = build_knn_graph(unit_square(), 3);
  std::ostringstream out;
  dump_edges(g, out);
  int lines = 0;
  for (char c : out.str()) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 6);
  CHECK(out.str().rfind("0 1 1\n", 0) == 0);
}

TEST_CASE("from_edges normalizes endpoints and builds incidence") {
  const Graph g = Graph::from_edges(4, {{3, 0, 2.0}, {1, 0, 1.0}, {2, 1, 4.0}, {3, 2, 8.0},
                                        {2, 0, 16.0}, {3, 1, 32.0}});
  CHECK(g.edge(0).u == 0);
  CHECK(g.edge(0).v == 1);
  for (int v = 0; v < 4; ++v) {
    CHECK(g.degree(v) == 3);
    for (int e : g.incident(v)) {
      CHECK((g.edge(e).u == v || g.edge(e).v == v));
      CHECK(g.opposite(e, v) != v);
    }
  }
  CHECK(g.mean_cost() == doctest::Approx((1 + 2 + 4 + 8 + 16 + 32) / 6.0));
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2, 1.0}}), IndexError);
}
