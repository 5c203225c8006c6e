#include <cmath>
#include <sstream>

#include <doctest.h>

#include "f2m/errors.hpp"
#include "f2m/primal.hpp"
#include "test_support.hpp"

using namespace f2m;
using namespace f2m::test;

namespace {

int count_sign(const EdgeClassification& cls, EdgeSign sign) {
  int count = 0;
  for (EdgeSign s : cls.label) count += s == sign ? 1 : 0;
  return count;
}

// Two concentric 5-cycles joined by spokes. With all multipliers at 1,
// cycle edges (cost 2) sit exactly on the zero band and spokes (cost 1.9)
// are negative: every node needs one more unit from its two cycle edges.
Graph pentagonal_prism() {
  std::vector<GraphEdge> edges;
  for (int i = 0; i < 5; ++i) {
    edges.push_back(GraphEdge{i, (i + 1) % 5, 2.0});
    edges.push_back(GraphEdge{5 + i, 5 + (i + 1) % 5, 2.0});
    edges.push_back(GraphEdge{i, 5 + i, 1.9});
  }
  return Graph::from_edges(10, std::move(edges));
}

}  // namespace

TEST_CASE("classification of the unit square") {
  const Graph g = complete_graph(unit_square());

  DualState half{{0.5, 0.5, 0.5, 0.5}};
  const EdgeClassification at_half = classify_edges(g, half, 1e-9);
  CHECK(count_sign(at_half, EdgeSign::kZero) == 4);
  CHECK(count_sign(at_half, EdgeSign::kPos) == 2);
  for (int e = 0; e < g.edge_count(); ++e) {
    const bool diagonal = g.edge(e).cost > 1.1;
    CHECK((at_half.label[static_cast<std::size_t>(e)] == EdgeSign::kZero) == !diagonal);
  }

  DualState zero{{0, 0, 0, 0}};
  CHECK(count_sign(classify_edges(g, zero, 1e-9), EdgeSign::kPos) == 6);

  CHECK_THROWS_AS(classify_edges(g, zero, 0.0), ArgumentError);
  CHECK_THROWS_AS(classify_edges(g, zero, -1.0), ArgumentError);
}

TEST_CASE("the zero band absorbs residual wiggle") {
  const Graph g = Graph::from_edges(2, {{0, 1, 1.0}});
  DualState s{{0.5, 0.5 + 1e-12}};  // v = -1e-12
  CHECK(classify_edges(g, s, 1e-9).label[0] == EdgeSign::kZero);
}

TEST_CASE("classification is monotone in tol") {
  const Instance inst = generate_instance(40, 5, 10.0);
  const Graph g = build_knn_graph(inst, 5);
  SplitMix64 rng(99);
  DualState s{std::vector<double>(40)};
  for (auto& l : s.lambda) l = rng.next_double() * 4.0;
  const EdgeClassification narrow = classify_edges(g, s, 1e-6);
  const EdgeClassification wide = classify_edges(g, s, 1e-1);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (narrow.label[static_cast<std::size_t>(e)] == EdgeSign::kZero) {
      CHECK(wide.label[static_cast<std::size_t>(e)] == EdgeSign::kZero);
    }
  }
}

TEST_CASE("unit-square extraction picks the sides") {
  const Graph g = complete_graph(unit_square());
  DualState half{{0.5, 0.5, 0.5, 0.5}};
  const PrimalSolution solution = extract_primal(g, half, 1e-9);
  CHECK(solution.objective == doctest::Approx(4.0).epsilon(1e-15));
  for (int e = 0; e < g.edge_count(); ++e) {
    const bool diagonal = g.edge(e).cost > 1.1;
    CHECK(solution.value[static_cast<std::size_t>(e)] == (diagonal ? 0.0 : 1.0));
  }

  const VerificationReport report = verify_solution(g, solution, half);
  CHECK(report.feasible);
  CHECK(report.duality_gap == 0.0);
  CHECK(report.violated_nodes.empty());
  CHECK(report.value_violations.empty());
}

TEST_CASE("odd zero cycles with unit residuals become half-valued") {
  const Graph g = pentagonal_prism();
  DualState s{std::vector<double>(10, 1.0)};
  const PrimalSolution solution = extract_primal(g, s, 1e-9);
  int halves = 0;
  for (int e = 0; e < g.edge_count(); ++e) {
    const double x = solution.value[static_cast<std::size_t>(e)];
    if (g.edge(e).cost == 1.9) {
      CHECK(x == 1.0);  // spokes are negative
    } else {
      CHECK(x == 0.5);
      ++halves;
    }
  }
  CHECK(halves == 10);
  const VerificationReport report = verify_solution(g, solution, s);
  CHECK(report.feasible);

  // half-valued edges form an even-degree subgraph
  std::vector<int> half_degree(10, 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    if (solution.value[static_cast<std::size_t>(e)] == 0.5) {
      ++half_degree[static_cast<std::size_t>(g.edge(e).u)];
      ++half_degree[static_cast<std::size_t>(g.edge(e).v)];
    }
  }
  for (int d : half_degree) CHECK(d % 2 == 0);
}

TEST_CASE("solve_zero_component finds the unique half assignment of C5") {
  std::vector<GraphEdge> edges;
  for (int i = 0; i < 5; ++i) edges.push_back(GraphEdge{i, (i + 1) % 5, 1.0});
  const Graph g = Graph::from_edges(5, std::move(edges));
  const std::vector<int> component = {0, 1, 2, 3, 4};
  const std::vector<int> residual(5, 1);
  const std::vector<double> values = solve_zero_component(g, component, residual);
  REQUIRE(values.size() == 5);
  for (double x : values) CHECK(x == 0.5);
}

TEST_CASE("oversized zero components are rejected") {
  std::vector<GraphEdge> edges;
  for (int i = 0; i < 25; ++i) edges.push_back(GraphEdge{i, (i + 1) % 25, 2.0});
  const Graph g = Graph::from_edges(25, std::move(edges));
  DualState s{std::vector<double>(25, 1.0)};  // every edge lands on the band
  CHECK_THROWS_AS(extract_primal(g, s, 1e-9), DegenerateExtraction);
}

TEST_CASE("more than two tight edges at a node is degenerate") {
  const Graph g = Graph::from_edges(
      4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}, {1, 2, 5.0}, {1, 3, 5.0}, {2, 3, 5.0}});
  DualState s{{5.0, 0.0, 0.0, 0.0}};  // three incident edges at -4
  CHECK_THROWS_AS(extract_primal(g, s, 1e-9), DegenerateExtraction);
}

TEST_CASE("unreachable residual is degenerate") {
  const Graph g = Graph::from_edges(2, {{0, 1, 1.0}});
  DualState s{{0.0, 0.0}};  // the only edge is positive, residual 2 unmet
  CHECK_THROWS_AS(extract_primal(g, s, 1e-9), DegenerateExtraction);
}

TEST_CASE("infeasible zero component is degenerate") {
  // zero band C4 over nodes 0-3 with residuals (2, 1, 2, 1): nodes 1 and 3
  // each carry one negative spoke to node 4. Edges (0,1) and (3,0) are forced
  // to 1 by node 0, leaving node 2 short.
  const Graph g = Graph::from_edges(5, {{0, 1, 2.0},
                                        {1, 2, 2.0},
                                        {2, 3, 2.0},
                                        {3, 0, 2.0},
                                        {1, 4, 1.9},
                                        {3, 4, 1.9}});
  DualState s{std::vector<double>(5, 1.0)};
  CHECK_THROWS_AS(extract_primal(g, s, 1e-9), DegenerateExtraction);
}

TEST_CASE("verification reports constructed violations") {
  const Graph g = complete_graph(unit_square());
  DualState half{{0.5, 0.5, 0.5, 0.5}};
  PrimalSolution solution = extract_primal(g, half, 1e-9);

  PrimalSolution broken = solution;
  int side = -1;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (broken.value[static_cast<std::size_t>(e)] == 1.0) {
      side = e;
      break;
    }
  }
  broken.value[static_cast<std::size_t>(side)] = 0.0;
  const VerificationReport r1 = verify_solution(g, broken, half);
  CHECK_FALSE(r1.feasible);
  REQUIRE(r1.violated_nodes.size() == 2);
  CHECK(r1.violated_nodes[0].second == 1.0);
  CHECK(r1.violated_nodes[1].second == 1.0);

  PrimalSolution off_grid = solution;
  off_grid.value[static_cast<std::size_t>(side)] = 0.3;
  const VerificationReport r2 = verify_solution(g, off_grid, half);
  CHECK_FALSE(r2.feasible);
  REQUIRE(r2.value_violations.size() == 1);
  CHECK(r2.value_violations[0] == side);
}

TEST_CASE("solution files list nonzero edges with a trailer") {
  const Graph g = complete_graph(unit_square());
  DualState half{{0.5, 0.5, 0.5, 0.5}};
  const PrimalSolution solution = extract_primal(g, half, 1e-9);
  const VerificationReport report = verify_solution(g, solution, half);
  std::ostringstream out;
  write_solution(g, solution, report, out);
  const std::string text = out.str();
  CHECK(text.find("objective 4 gap 0") != std::string::npos);
  int lines = 0;
  for (char c : text) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 5);  // four value-1 edges plus the trailer
}
