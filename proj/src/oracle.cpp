#include "f2m/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "f2m/errors.hpp"

namespace f2m {

namespace {

// DFS state over edges reordered node-major: all edges (u, w) with lower
// endpoint u form one group, so node u closes exactly when its group ends.
struct Enumerator {
  const Graph& graph;
  std::vector<int> order;            // positions -> original edge ids
  std::vector<std::pair<int, int>> ends;
  std::vector<double> cost;
  std::vector<int> target;           // halves still needed per node (0..4)
  std::vector<int> remaining;        // unassigned incident edges per node
  std::vector<std::vector<std::pair<double, int>>> incident_by_cost;  // (cost, position)
  std::vector<int> assigned;         // halves per position, -1 = unassigned
  std::vector<int> best;
  double best_cost = std::numeric_limits<double>::infinity();
  std::uint64_t feasible_seen = 0;

  explicit Enumerator(const Graph& g) : graph(g) {
    const int n = g.node_count();
    const int m = g.edge_count();

    order.resize(static_cast<std::size_t>(m));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      const GraphEdge& ea = g.edge(a);
      const GraphEdge& eb = g.edge(b);
      if (ea.u != eb.u) return ea.u < eb.u;
      if (ea.cost != eb.cost) return ea.cost < eb.cost;
      return ea.v < eb.v;
    });

    ends.resize(static_cast<std::size_t>(m));
    cost.resize(static_cast<std::size_t>(m));
    target.assign(static_cast<std::size_t>(n), 4);
    remaining.assign(static_cast<std::size_t>(n), 0);
    incident_by_cost.resize(static_cast<std::size_t>(n));
    for (int pos = 0; pos < m; ++pos) {
      const GraphEdge& ge = g.edge(order[static_cast<std::size_t>(pos)]);
      ends[static_cast<std::size_t>(pos)] = {ge.u, ge.v};
      cost[static_cast<std::size_t>(pos)] = ge.cost;
      ++remaining[static_cast<std::size_t>(ge.u)];
      ++remaining[static_cast<std::size_t>(ge.v)];
      incident_by_cost[static_cast<std::size_t>(ge.u)].emplace_back(ge.cost, pos);
      incident_by_cost[static_cast<std::size_t>(ge.v)].emplace_back(ge.cost, pos);
    }
    for (auto& list : incident_by_cost) std::sort(list.begin(), list.end());
    assigned.assign(static_cast<std::size_t>(m), -1);
  }

  // Admissible completion bound: each open node needs target[v] half-units;
  // an unassigned incident edge supplies up to two at c/2 apiece. Summing the
  // per-node cheapest selections double-counts every edge, so halve the total.
  double completion_bound() const {
    double total = 0.0;
    for (std::size_t v = 0; v < target.size(); ++v) {
      int need = target[v];
      if (need == 0) continue;
      if (need > 2 * remaining[v]) return std::numeric_limits<double>::infinity();
      double node_total = 0.0;
      for (const auto& [c, pos] : incident_by_cost[v]) {
        if (assigned[static_cast<std::size_t>(pos)] >= 0) continue;
        const int take = std::min(2, need);
        node_total += take * 0.5 * c;
        need -= take;
        if (need == 0) break;
      }
      total += node_total;
    }
    return 0.5 * total;
  }

  void dfs(int pos, double acc) {
    if (acc + completion_bound() >= best_cost) return;
    if (pos == static_cast<int>(ends.size())) {
      ++feasible_seen;
      best_cost = acc;
      best = assigned;
      return;
    }
    const auto [u, w] = ends[static_cast<std::size_t>(pos)];
    --remaining[static_cast<std::size_t>(u)];
    --remaining[static_cast<std::size_t>(w)];
    for (int h = 2; h >= 0; --h) {
      if (h > target[static_cast<std::size_t>(u)] || h > target[static_cast<std::size_t>(w)]) {
        continue;
      }
      target[static_cast<std::size_t>(u)] -= h;
      target[static_cast<std::size_t>(w)] -= h;
      if (target[static_cast<std::size_t>(u)] <= 2 * remaining[static_cast<std::size_t>(u)] &&
          target[static_cast<std::size_t>(w)] <= 2 * remaining[static_cast<std::size_t>(w)]) {
        assigned[static_cast<std::size_t>(pos)] = h;
        dfs(pos + 1, acc + 0.5 * h * cost[static_cast<std::size_t>(pos)]);
        assigned[static_cast<std::size_t>(pos)] = -1;
      }
      target[static_cast<std::size_t>(u)] += h;
      target[static_cast<std::size_t>(w)] += h;
    }
    ++remaining[static_cast<std::size_t>(u)];
    ++remaining[static_cast<std::size_t>(w)];
  }
};

}  // namespace

OracleResult brute_force_f2m(const Graph& graph, int max_edges) {
  const int m = graph.edge_count();
  if (m > max_edges) {
    throw TooLarge("oracle limited to " + std::to_string(max_edges) + " edges, got " +
                   std::to_string(m));
  }

  Enumerator en(graph);
  en.dfs(0, 0.0);
  if (!std::isfinite(en.best_cost)) {
    throw Infeasible("no {0, 1/2, 1} assignment meets every degree-2 constraint");
  }

  OracleResult result;
  result.enumerated = en.feasible_seen;
  result.solution.value.assign(static_cast<std::size_t>(m), 0.0);
  for (int pos = 0; pos < m; ++pos) {
    result.solution.value[static_cast<std::size_t>(en.order[static_cast<std::size_t>(pos)])] =
        0.5 * en.best[static_cast<std::size_t>(pos)];
  }
  double objective = 0.0;
  for (int e = 0; e < m; ++e) {
    objective += graph.edge(e).cost * result.solution.value[static_cast<std::size_t>(e)];
  }
  result.solution.objective = objective;
  result.optimum = objective;
  return result;
}

}  // namespace f2m
