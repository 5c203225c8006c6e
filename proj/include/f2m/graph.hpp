#pragma once

#include <span>
#include <vector>

#include "f2m/instance.hpp"

namespace f2m {

struct GraphEdge {
  int u = 0;
  int v = 0;
  double cost = 0.0;
};

/// Immutable weighted undirected graph. Edges are stored with u < v in
/// ascending (u, v) order; incidence is CSR over edge ids.
class Graph {
 public:
  Graph() = default;

  /// Builds the incidence structure from an edge list. Endpoints are
  /// normalized to u < v and the list is sorted; duplicate edges and
  /// self-loops are preserved for validate_graph to flag.
  static Graph from_edges(int n, std::vector<GraphEdge> edges);

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const GraphEdge& edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }
  const std::vector<GraphEdge>& edges() const { return edges_; }

  std::span<const int> incident(int v) const {
    return std::span<const int>(incidence_ids_.data() + incidence_offsets_[static_cast<std::size_t>(v)],
                                incidence_ids_.data() + incidence_offsets_[static_cast<std::size_t>(v) + 1]);
  }
  int degree(int v) const {
    return static_cast<int>(incidence_offsets_[static_cast<std::size_t>(v) + 1] -
                            incidence_offsets_[static_cast<std::size_t>(v)]);
  }

  /// Other endpoint of edge e as seen from node v.
  int opposite(int e, int v) const {
    const GraphEdge& ge = edges_[static_cast<std::size_t>(e)];
    return ge.u == v ? ge.v : ge.u;
  }

  /// Mean edge cost, the scale for all relative tolerances. 0 if no edges.
  double mean_cost() const { return mean_cost_; }

  /// Same topology with replaced costs (for jitter restarts).
  Graph with_costs(const std::vector<double>& costs) const;

 private:
  int n_ = 0;
  std::vector<GraphEdge> edges_;
  std::vector<std::int64_t> incidence_offsets_;
  std::vector<int> incidence_ids_;
  double mean_cost_ = 0.0;
};

struct GraphReport {
  int min_degree = 0;
  int max_degree = 0;
  int edge_count = 0;
};

/// Symmetrized k-nearest-neighbor graph under the instance's distance mode.
/// Equidistant neighbors tie-break toward the smaller node index; the result
/// is independent of the thread count. Neighbor search runs on a uniform
/// spatial grid with ring expansion. Throws ArgumentError (k < 3 or n < 4).
Graph build_knn_graph(const Instance& instance, int k, int threads = 0);

/// Degree statistics plus structural checks. Throws StructureError on
/// duplicate edges or self-loops, MinDegreeError if some degree < 3.
GraphReport validate_graph(const Graph& graph);

/// Edge list as "u v cost" lines (debug dump).
void dump_edges(const Graph& graph, std::ostream& out);

}  // namespace f2m
