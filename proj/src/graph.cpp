#include "f2m/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <utility>

#include "f2m/errors.hpp"
#include "f2m/parallel.hpp"

namespace f2m {

Graph Graph::from_edges(int n, std::vector<GraphEdge> edges) {
  if (n < 0) throw ArgumentError("from_edges: negative node count");
  for (auto& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw IndexError("edge endpoint out of range");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.incidence_offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& e : g.edges_) {
    ++g.incidence_offsets_[static_cast<std::size_t>(e.u) + 1];
    if (e.v != e.u) ++g.incidence_offsets_[static_cast<std::size_t>(e.v) + 1];
  }
  for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v) {
    g.incidence_offsets_[v + 1] += g.incidence_offsets_[v];
  }
  g.incidence_ids_.resize(static_cast<std::size_t>(g.incidence_offsets_[static_cast<std::size_t>(n)]));
  std::vector<std::int64_t> cursor(g.incidence_offsets_.begin(), g.incidence_offsets_.end() - 1);
  for (int e = 0; e < g.edge_count(); ++e) {
    const GraphEdge& ge = g.edges_[static_cast<std::size_t>(e)];
    g.incidence_ids_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(ge.u)]++)] = e;
    if (ge.v != ge.u) {
      g.incidence_ids_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(ge.v)]++)] = e;
    }
  }

  double total = 0.0;
  for (const auto& e : g.edges_) total += e.cost;
  g.mean_cost_ = g.edges_.empty() ? 0.0 : total / static_cast<double>(g.edges_.size());
  return g;
}

Graph Graph::with_costs(const std::vector<double>& costs) const {
  if (costs.size() != edges_.size()) {
    throw ArgumentError("with_costs: cost count does not match edge count");
  }
  Graph g = *this;
  double total = 0.0;
  for (std::size_t e = 0; e < costs.size(); ++e) {
    g.edges_[e].cost = costs[e];
    total += costs[e];
  }
  g.mean_cost_ = g.edges_.empty() ? 0.0 : total / static_cast<double>(g.edges_.size());
  return g;
}

namespace {

// Uniform bucket grid over the instance's bounding box, ~1 point per cell.
struct PointGrid {
  int gx = 1;
  int gy = 1;
  double min_x = 0.0;
  double min_y = 0.0;
  double cell = 1.0;
  std::vector<std::int64_t> offsets;  // gx*gy + 1
  std::vector<int> ids;               // point ids bucketed, ascending within a cell

  explicit PointGrid(const std::vector<Point>& pts) {
    const std::size_t n = pts.size();
    double max_x, max_y;
    min_x = max_x = pts[0].x;
    min_y = max_y = pts[0].y;
    for (const Point& p : pts) {
      min_x = std::min(min_x, p.x);
      max_x = std::max(max_x, p.x);
      min_y = std::min(min_y, p.y);
      max_y = std::max(max_y, p.y);
    }
    const double width = max_x - min_x;
    const double height = max_y - min_y;
    const double area = width * height;
    cell = area > 0.0 ? std::sqrt(area / static_cast<double>(n)) : std::max(width, height);
    if (!(cell > 0.0)) cell = 1.0;
    for (;;) {
      gx = std::max(1, static_cast<int>(width / cell) + 1);
      gy = std::max(1, static_cast<int>(height / cell) + 1);
      // elongated boxes make area-based sizing explode; cap the cell count
      if (static_cast<std::int64_t>(gx) * gy <= 64 + 8 * static_cast<std::int64_t>(n)) break;
      cell *= 2.0;
    }

    offsets.assign(static_cast<std::size_t>(gx) * gy + 1, 0);
    std::vector<int> cell_of(n);
    for (std::size_t i = 0; i < n; ++i) {
      cell_of[i] = cell_index(pts[i]);
      ++offsets[static_cast<std::size_t>(cell_of[i]) + 1];
    }
    for (std::size_t c = 1; c < offsets.size(); ++c) offsets[c] += offsets[c - 1];
    ids.resize(n);
    std::vector<std::int64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (std::size_t i = 0; i < n; ++i) {
      ids[static_cast<std::size_t>(cursor[static_cast<std::size_t>(cell_of[i])]++)] =
          static_cast<int>(i);
    }
  }

  int clamp_cx(double x) const {
    int c = static_cast<int>((x - min_x) / cell);
    return std::clamp(c, 0, gx - 1);
  }
  int clamp_cy(double y) const {
    int c = static_cast<int>((y - min_y) / cell);
    return std::clamp(c, 0, gy - 1);
  }
  int cell_index(const Point& p) const { return clamp_cy(p.y) * gx + clamp_cx(p.x); }

  std::span<const int> cell_points(int cx, int cy) const {
    const std::size_t c = static_cast<std::size_t>(cy) * gx + cx;
    return std::span<const int>(ids.data() + offsets[c], ids.data() + offsets[c + 1]);
  }
};

// Bounded worst-first list of the k best (distance, index) candidates.
struct NeighborHeap {
  struct Entry {
    double d;
    int idx;
  };
  std::vector<Entry> heap;
  int k;

  explicit NeighborHeap(int k_) : k(k_) { heap.reserve(static_cast<std::size_t>(k_)); }

  static bool worse(const Entry& a, const Entry& b) {
    return a.d != b.d ? a.d < b.d : a.idx < b.idx;  // max-heap on (d, idx)
  }

  bool full() const { return static_cast<int>(heap.size()) == k; }
  double worst_distance() const { return heap.front().d; }

  void offer(double d, int idx) {
    if (!full()) {
      heap.push_back({d, idx});
      std::push_heap(heap.begin(), heap.end(), worse);
      return;
    }
    const Entry& top = heap.front();
    if (d < top.d || (d == top.d && idx < top.idx)) {
      std::pop_heap(heap.begin(), heap.end(), worse);
      heap.back() = {d, idx};
      std::push_heap(heap.begin(), heap.end(), worse);
    }
  }
};

}  // namespace

Graph build_knn_graph(const Instance& instance, int k, int threads) {
  const int n = instance.node_count();
  if (k < 3) throw ArgumentError("build_knn_graph: k must be >= 3");
  if (n < 4) throw ArgumentError("build_knn_graph: need at least 4 nodes");

  const bool rounded = instance.mode == DistanceMode::kEuc2dRounded;
  const int per_node = std::min(k, n - 1);
  const PointGrid grid(instance.points);
  const int max_ring = std::max(grid.gx, grid.gy);

  std::vector<int> neighbors(static_cast<std::size_t>(n) * per_node);

  if (threads <= 0) threads = default_thread_count();
  ThreadPool pool(threads);
  pool.for_chunks(n, kNodeChunk, [&](std::int64_t, std::int64_t begin, std::int64_t end) {
    NeighborHeap best(per_node);
    for (std::int64_t i = begin; i < end; ++i) {
      const int node = static_cast<int>(i);
      best.heap.clear();
      const int ccx = grid.clamp_cx(instance.points[i].x);
      const int ccy = grid.clamp_cy(instance.points[i].y);
      for (int r = 0; r <= max_ring; ++r) {
        const int x0 = ccx - r, x1 = ccx + r;
        const int y0 = ccy - r, y1 = ccy + r;
        for (int cy = std::max(0, y0); cy <= std::min(grid.gy - 1, y1); ++cy) {
          const bool y_edge = (cy == y0 || cy == y1);
          for (int cx = std::max(0, x0); cx <= std::min(grid.gx - 1, x1); ++cx) {
            if (!y_edge && cx != x0 && cx != x1) continue;  // ring cells only
            for (int q : grid.cell_points(cx, cy)) {
              if (q == node) continue;
              best.offer(distance(instance, node, q), q);
            }
          }
        }
        if (best.full()) {
          // Unseen points sit in rings > r, hence at Euclidean distance
          // >= r * cell (per-axis separation). Rounding lowers the reachable
          // selection distance by at most 0.5; the relative slack absorbs
          // cell-boundary assignment at ulp level.
          double bound = static_cast<double>(r) * grid.cell * (1.0 - 1e-12);
          if (rounded) bound -= 0.5;
          if (bound > best.worst_distance()) break;
        }
      }
      std::vector<NeighborHeap::Entry>& h = best.heap;
      std::sort(h.begin(), h.end(), [](const auto& a, const auto& b) {
        return a.d != b.d ? a.d < b.d : a.idx < b.idx;
      });
      for (int j = 0; j < per_node; ++j) {
        neighbors[i * per_node + j] = h[static_cast<std::size_t>(j)].idx;
      }
    }
  });

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(n) * per_node);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < per_node; ++j) {
      const int q = neighbors[static_cast<std::size_t>(i) * per_node + j];
      pairs.emplace_back(std::min(i, q), std::max(i, q));
    }
  }
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());

  std::vector<GraphEdge> edges;
  edges.reserve(pairs.size());
  for (const auto& [u, v] : pairs) {
    edges.push_back(GraphEdge{u, v, distance(instance, u, v)});
  }
  return Graph::from_edges(n, std::move(edges));
}

GraphReport validate_graph(const Graph& graph) {
  const int n = graph.node_count();
  const int m = graph.edge_count();
  for (int e = 0; e < m; ++e) {
    const GraphEdge& ge = graph.edge(e);
    if (ge.u == ge.v) {
      throw StructureError("self-loop at node " + std::to_string(ge.u));
    }
    if (e > 0) {
      const GraphEdge& prev = graph.edge(e - 1);
      if (prev.u == ge.u && prev.v == ge.v) {
        throw StructureError("duplicate edge (" + std::to_string(ge.u) + ", " +
                             std::to_string(ge.v) + ")");
      }
    }
    if (!(ge.cost >= 0.0)) {
      throw StructureError("negative cost on edge (" + std::to_string(ge.u) + ", " +
                           std::to_string(ge.v) + ")");
    }
  }

  GraphReport report;
  report.edge_count = m;
  report.min_degree = n > 0 ? graph.degree(0) : 0;
  report.max_degree = 0;
  for (int v = 0; v < n; ++v) {
    const int d = graph.degree(v);
    report.min_degree = std::min(report.min_degree, d);
    report.max_degree = std::max(report.max_degree, d);
  }
  if (report.min_degree < 3) {
    throw MinDegreeError("node degree " + std::to_string(report.min_degree) +
                         " below 3; the node update needs a third-shortest edge");
  }
  return report;
}

void dump_edges(const Graph& graph, std::ostream& out) {
  char buf[96];
  for (const GraphEdge& e : graph.edges()) {
    std::snprintf(buf, sizeof(buf), "%d %d %.17g\n", e.u, e.v, e.cost);
    out << buf;
  }
}

}  // namespace f2m
