#include "f2m/primal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

#include "f2m/errors.hpp"
#include "f2m/parallel.hpp"

namespace f2m {

namespace {

constexpr int kMaxComponentEdges = 20;

// Union-find over node ids.
struct DisjointSets {
  std::vector<int> parent;

  explicit DisjointSets(int n) : parent(static_cast<std::size_t>(n)) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
  }
};

}  // namespace

EdgeClassification classify_edges(const Graph& graph, const DualState& state, double tol) {
  if (!(tol > 0.0)) throw ArgumentError("classify_edges: tol must be > 0");
  const int m = graph.edge_count();
  EdgeClassification cls;
  cls.label.assign(static_cast<std::size_t>(m), EdgeSign::kZero);
  const double* lambda = state.lambda.data();

  ThreadPool pool(default_thread_count());
  pool.for_chunks(m, kEdgeChunk, [&](std::int64_t, std::int64_t begin, std::int64_t end) {
    for (std::int64_t e = begin; e < end; ++e) {
      const GraphEdge& ge = graph.edge(static_cast<int>(e));
      const double v = ge.cost - lambda[ge.u] - lambda[ge.v];
      if (v < -tol) {
        cls.label[static_cast<std::size_t>(e)] = EdgeSign::kNeg;
      } else if (v > tol) {
        cls.label[static_cast<std::size_t>(e)] = EdgeSign::kPos;
      }
    }
  });
  return cls;
}

std::vector<double> solve_zero_component(const Graph& graph,
                                         const std::vector<int>& component_edges,
                                         const std::vector<int>& residual) {
  const int m = static_cast<int>(component_edges.size());

  // Local node ids and per-node remaining targets in half units.
  std::vector<int> nodes;
  for (int e : component_edges) {
    nodes.push_back(graph.edge(e).u);
    nodes.push_back(graph.edge(e).v);
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  auto local = [&](int v) {
    return static_cast<int>(std::lower_bound(nodes.begin(), nodes.end(), v) - nodes.begin());
  };

  std::vector<int> target(nodes.size());
  std::vector<int> remaining(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    target[i] = 2 * residual[static_cast<std::size_t>(nodes[i])];
  }
  std::vector<std::pair<int, int>> ends(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const GraphEdge& ge = graph.edge(component_edges[static_cast<std::size_t>(i)]);
    ends[static_cast<std::size_t>(i)] = {local(ge.u), local(ge.v)};
    ++remaining[static_cast<std::size_t>(ends[static_cast<std::size_t>(i)].first)];
    ++remaining[static_cast<std::size_t>(ends[static_cast<std::size_t>(i)].second)];
  }

  std::vector<int> halves(static_cast<std::size_t>(m), 0);
  std::vector<int> best_halves;
  double best_cost = std::numeric_limits<double>::infinity();

  // Exhaustive DFS over per-edge half counts {0, 1, 2} with residual pruning,
  // keeping the cheapest feasible completion.
  auto dfs = [&](auto&& self, int i, double cost) -> void {
    if (cost >= best_cost) return;
    if (i == m) {
      best_cost = cost;
      best_halves = halves;
      return;
    }
    const auto [a, b] = ends[static_cast<std::size_t>(i)];
    --remaining[static_cast<std::size_t>(a)];
    --remaining[static_cast<std::size_t>(b)];
    const double c = graph.edge(component_edges[static_cast<std::size_t>(i)]).cost;
    for (int h = 0; h <= 2; ++h) {
      if (h > target[static_cast<std::size_t>(a)] || h > target[static_cast<std::size_t>(b)]) {
        break;
      }
      target[static_cast<std::size_t>(a)] -= h;
      target[static_cast<std::size_t>(b)] -= h;
      const bool ok =
          target[static_cast<std::size_t>(a)] <= 2 * remaining[static_cast<std::size_t>(a)] &&
          target[static_cast<std::size_t>(b)] <= 2 * remaining[static_cast<std::size_t>(b)];
      if (ok) {
        halves[static_cast<std::size_t>(i)] = h;
        self(self, i + 1, cost + 0.5 * h * c);
      }
      target[static_cast<std::size_t>(a)] += h;
      target[static_cast<std::size_t>(b)] += h;
    }
    ++remaining[static_cast<std::size_t>(a)];
    ++remaining[static_cast<std::size_t>(b)];
  };
  dfs(dfs, 0, 0.0);

  std::vector<double> values;
  if (!std::isfinite(best_cost)) return values;  // no feasible completion
  values.resize(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    values[static_cast<std::size_t>(i)] = 0.5 * best_halves[static_cast<std::size_t>(i)];
  }
  return values;
}

PrimalSolution extract_primal(const Graph& graph, const DualState& state, double tol) {
  const int n = graph.node_count();
  const int m = graph.edge_count();
  const EdgeClassification cls = classify_edges(graph, state, tol);

  std::vector<int> neg_degree(static_cast<std::size_t>(n), 0);
  std::vector<int> zero_degree(static_cast<std::size_t>(n), 0);
  for (int e = 0; e < m; ++e) {
    const GraphEdge& ge = graph.edge(e);
    if (cls.label[static_cast<std::size_t>(e)] == EdgeSign::kNeg) {
      ++neg_degree[static_cast<std::size_t>(ge.u)];
      ++neg_degree[static_cast<std::size_t>(ge.v)];
    } else if (cls.label[static_cast<std::size_t>(e)] == EdgeSign::kZero) {
      ++zero_degree[static_cast<std::size_t>(ge.u)];
      ++zero_degree[static_cast<std::size_t>(ge.v)];
    }
  }

  std::vector<int> residual(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    if (neg_degree[static_cast<std::size_t>(v)] > 2) {
      throw DegenerateExtraction("node " + std::to_string(v) + " has " +
                                 std::to_string(neg_degree[static_cast<std::size_t>(v)]) +
                                 " tight edges (> 2)");
    }
    residual[static_cast<std::size_t>(v)] = 2 - neg_degree[static_cast<std::size_t>(v)];
    if (residual[static_cast<std::size_t>(v)] > 0 &&
        zero_degree[static_cast<std::size_t>(v)] == 0) {
      throw DegenerateExtraction("node " + std::to_string(v) + " needs " +
                                 std::to_string(residual[static_cast<std::size_t>(v)]) +
                                 " more units but has no zero-band edge");
    }
  }

  // Connected components of the zero-band subgraph.
  DisjointSets sets(n);
  for (int e = 0; e < m; ++e) {
    if (cls.label[static_cast<std::size_t>(e)] == EdgeSign::kZero) {
      sets.unite(graph.edge(e).u, graph.edge(e).v);
    }
  }
  std::vector<std::vector<int>> components;
  std::vector<int> component_of_root(static_cast<std::size_t>(n), -1);
  for (int e = 0; e < m; ++e) {
    if (cls.label[static_cast<std::size_t>(e)] != EdgeSign::kZero) continue;
    const int root = sets.find(graph.edge(e).u);
    if (component_of_root[static_cast<std::size_t>(root)] < 0) {
      component_of_root[static_cast<std::size_t>(root)] = static_cast<int>(components.size());
      components.emplace_back();
    }
    components[static_cast<std::size_t>(component_of_root[static_cast<std::size_t>(root)])]
        .push_back(e);
  }

  PrimalSolution solution;
  solution.value.assign(static_cast<std::size_t>(m), 0.0);
  for (int e = 0; e < m; ++e) {
    if (cls.label[static_cast<std::size_t>(e)] == EdgeSign::kNeg) {
      solution.value[static_cast<std::size_t>(e)] = 1.0;
    }
  }

  // Components touch disjoint edges, so they solve independently.
  ThreadPool pool(default_thread_count());
  pool.for_chunks(static_cast<std::int64_t>(components.size()), 1,
                  [&](std::int64_t, std::int64_t begin, std::int64_t end) {
    for (std::int64_t c = begin; c < end; ++c) {
      const auto& comp = components[static_cast<std::size_t>(c)];
      if (static_cast<int>(comp.size()) > kMaxComponentEdges) {
        throw DegenerateExtraction("zero component with " + std::to_string(comp.size()) +
                                   " edges exceeds the exhaustive-search cap of " +
                                   std::to_string(kMaxComponentEdges));
      }
      const std::vector<double> values = solve_zero_component(graph, comp, residual);
      if (values.empty()) {
        throw DegenerateExtraction(
            "no feasible {0, 1/2, 1} completion for a zero component of " +
            std::to_string(comp.size()) + " edges");
      }
      for (std::size_t i = 0; i < comp.size(); ++i) {
        solution.value[static_cast<std::size_t>(comp[i])] = values[i];
      }
    }
  });

  double objective = 0.0;
  for (int e = 0; e < m; ++e) {
    objective += graph.edge(e).cost * solution.value[static_cast<std::size_t>(e)];
  }
  solution.objective = objective;
  return solution;
}

VerificationReport verify_solution(const Graph& graph, const PrimalSolution& solution,
                                   const DualState& state) {
  const int n = graph.node_count();
  const int m = graph.edge_count();
  VerificationReport report;

  const std::size_t node_chunks = static_cast<std::size_t>(chunk_count(n, kNodeChunk));
  const std::size_t edge_chunks = static_cast<std::size_t>(chunk_count(m, kEdgeChunk));
  std::vector<std::vector<std::pair<int, double>>> bad_nodes(node_chunks);
  std::vector<std::vector<int>> bad_values(edge_chunks);

  ThreadPool pool(default_thread_count());
  pool.for_chunks(n, kNodeChunk, [&](std::int64_t ci, std::int64_t begin, std::int64_t end) {
    for (std::int64_t v = begin; v < end; ++v) {
      double sum = 0.0;
      for (int e : graph.incident(static_cast<int>(v))) {
        sum += solution.value[static_cast<std::size_t>(e)];
      }
      if (sum != 2.0) {
        bad_nodes[static_cast<std::size_t>(ci)].emplace_back(static_cast<int>(v), sum);
      }
    }
  });
  pool.for_chunks(m, kEdgeChunk, [&](std::int64_t ci, std::int64_t begin, std::int64_t end) {
    for (std::int64_t e = begin; e < end; ++e) {
      const double x = solution.value[static_cast<std::size_t>(e)];
      if (x != 0.0 && x != 0.5 && x != 1.0) {
        bad_values[static_cast<std::size_t>(ci)].push_back(static_cast<int>(e));
      }
    }
  });

  for (const auto& chunk : bad_nodes) {
    report.violated_nodes.insert(report.violated_nodes.end(), chunk.begin(), chunk.end());
  }
  for (const auto& chunk : bad_values) {
    report.value_violations.insert(report.value_violations.end(), chunk.begin(), chunk.end());
  }
  report.feasible = report.violated_nodes.empty() && report.value_violations.empty();
  report.duality_gap = solution.objective - dual_objective(graph, state);
  return report;
}

void write_solution(const Graph& graph, const PrimalSolution& solution,
                    const VerificationReport& report, std::ostream& out) {
  char buf[96];
  for (int e = 0; e < graph.edge_count(); ++e) {
    const double x = solution.value[static_cast<std::size_t>(e)];
    if (x == 0.0) continue;
    const GraphEdge& ge = graph.edge(e);
    std::snprintf(buf, sizeof(buf), "%d %d %g\n", ge.u, ge.v, x);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf), "objective %.17g gap %.17g\n", solution.objective,
                report.duality_gap);
  out << buf;
}

}  // namespace f2m
