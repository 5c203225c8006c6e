#include "f2m/dual.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "f2m/errors.hpp"
#include "f2m/parallel.hpp"

namespace f2m {

void EngineConfig::validate() const {
  if (b < 1) throw ArgumentError("EngineConfig: b must be >= 1");
  if (!(eta > 0.0) || eta > 1.0) throw ArgumentError("EngineConfig: eta must be in (0, 1]");
  if (!(eps > 0.0)) throw ArgumentError("EngineConfig: eps must be > 0");
  if (max_sweeps < 0) throw ArgumentError("EngineConfig: max_sweeps must be >= 0");
}

double adjusted_length(const Graph& graph, const DualState& state, int e) {
  if (e < 0 || e >= graph.edge_count()) {
    throw IndexError("edge id out of range: " + std::to_string(e));
  }
  const GraphEdge& ge = graph.edge(e);
  return ge.cost - state.lambda[static_cast<std::size_t>(ge.u)] -
         state.lambda[static_cast<std::size_t>(ge.v)];
}

namespace {

// Smallest (b+1) adjusted incident lengths at v, by insertion into a small
// buffer. Returns false if degree <= b.
inline bool smallest_adjusted(const Graph& graph, const double* lambda, int v, int b,
                              double* out) {
  const auto incident = graph.incident(v);
  if (static_cast<int>(incident.size()) <= b) return false;
  const int want = b + 1;
  int have = 0;
  const double lv = lambda[v];
  for (int e : incident) {
    const GraphEdge& ge = graph.edge(e);
    const double other = ge.u == v ? lambda[ge.v] : lambda[ge.u];
    const double val = ge.cost - lv - other;
    if (have < want) {
      int i = have++;
      while (i > 0 && out[i - 1] > val) {
        out[i] = out[i - 1];
        --i;
      }
      out[i] = val;
    } else if (val < out[want - 1]) {
      int i = want - 1;
      while (i > 0 && out[i - 1] > val) {
        out[i] = out[i - 1];
        --i;
      }
      out[i] = val;
    }
  }
  return true;
}

inline double delta_for(const double* s, int b, UpdateRule rule) {
  if (rule == UpdateRule::kPaperDifference) {
    return 0.5 * (s[b - 1] - s[b]);
  }
  return 0.5 * (s[b - 1] + s[b]);
}

constexpr int kMaxB = 8;

}  // namespace

double node_update_delta(const Graph& graph, const DualState& state, int v, int b) {
  if (v < 0 || v >= graph.node_count()) {
    throw IndexError("node id out of range: " + std::to_string(v));
  }
  if (b < 1 || b > kMaxB) throw ArgumentError("node_update_delta: b out of range");
  double s[kMaxB + 1];
  if (!smallest_adjusted(graph, state.lambda.data(), v, b, s)) {
    throw DegreeError("node " + std::to_string(v) + " has degree " +
                      std::to_string(graph.degree(v)) + " <= b = " + std::to_string(b));
  }
  return 0.5 * (s[b - 1] + s[b]);
}

double dual_objective_pooled(const Graph& graph, const DualState& state, int b,
                             ThreadPool* pool) {
  const int n = graph.node_count();
  const int m = graph.edge_count();
  const double* lambda = state.lambda.data();

  std::vector<double> node_part(static_cast<std::size_t>(chunk_count(n, kNodeChunk)), 0.0);
  std::vector<double> edge_part(static_cast<std::size_t>(chunk_count(m, kEdgeChunk)), 0.0);

  auto node_body = [&](std::int64_t ci, std::int64_t begin, std::int64_t end) {
    double acc = 0.0;
    for (std::int64_t v = begin; v < end; ++v) acc += lambda[v];
    node_part[static_cast<std::size_t>(ci)] = acc;
  };
  auto edge_body = [&](std::int64_t ci, std::int64_t begin, std::int64_t end) {
    double acc = 0.0;
    for (std::int64_t e = begin; e < end; ++e) {
      const GraphEdge& ge = graph.edge(static_cast<int>(e));
      const double val = ge.cost - lambda[ge.u] - lambda[ge.v];
      if (val < 0.0) acc += val;
    }
    edge_part[static_cast<std::size_t>(ci)] = acc;
  };

  if (pool != nullptr) {
    pool->for_chunks(n, kNodeChunk, node_body);
    pool->for_chunks(m, kEdgeChunk, edge_body);
  } else {
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(node_part.size()); ++ci) {
      node_body(ci, ci * kNodeChunk, std::min<std::int64_t>(n, (ci + 1) * kNodeChunk));
    }
    for (std::int64_t ci = 0; ci < static_cast<std::int64_t>(edge_part.size()); ++ci) {
      edge_body(ci, ci * kEdgeChunk, std::min<std::int64_t>(m, (ci + 1) * kEdgeChunk));
    }
  }
  return static_cast<double>(b) * combine_partials(node_part) + combine_partials(edge_part);
}

double dual_objective(const Graph& graph, const DualState& state, int b) {
  return dual_objective_pooled(graph, state, b, nullptr);
}

SweepStats jacobi_sweep(const Graph& graph, DualState& state, const EngineConfig& config,
                        ThreadPool& pool, std::vector<double>& delta) {
  config.validate();
  const int n = graph.node_count();
  delta.resize(static_cast<std::size_t>(n));

  const std::size_t n_chunks = static_cast<std::size_t>(chunk_count(n, kNodeChunk));
  std::vector<double> chunk_max(n_chunks, 0.0);

  // Phase 1: deltas from the frozen snapshot.
  const double* lambda = state.lambda.data();
  pool.for_chunks(n, kNodeChunk, [&](std::int64_t ci, std::int64_t begin, std::int64_t end) {
    double local_max = 0.0;
    double s[kMaxB + 1];
    for (std::int64_t v = begin; v < end; ++v) {
      if (!smallest_adjusted(graph, lambda, static_cast<int>(v), config.b, s)) {
        throw DegreeError("node " + std::to_string(v) + " has degree <= b");
      }
      const double d = delta_for(s, config.b, config.update);
      delta[static_cast<std::size_t>(v)] = d;
      local_max = std::max(local_max, std::abs(d));
    }
    chunk_max[static_cast<std::size_t>(ci)] = local_max;
  });

  // Phase 2: damped writes, disjoint node ranges.
  double* lambda_mut = state.lambda.data();
  const double eta = config.eta;
  pool.for_chunks(n, kNodeChunk, [&](std::int64_t, std::int64_t begin, std::int64_t end) {
    for (std::int64_t v = begin; v < end; ++v) {
      lambda_mut[v] += eta * delta[static_cast<std::size_t>(v)];
    }
  });

  SweepStats stats;
  for (double v : chunk_max) stats.max_abs_delta = std::max(stats.max_abs_delta, v);
  stats.dual_value = dual_objective_pooled(graph, state, config.b, &pool);
  return stats;
}

SweepStats jacobi_sweep(const Graph& graph, DualState& state, const EngineConfig& config) {
  ThreadPool pool(config.threads > 0 ? config.threads : default_thread_count());
  std::vector<double> delta;
  return jacobi_sweep(graph, state, config, pool, delta);
}

SweepStats gauss_seidel_sweep(const Graph& graph, DualState& state,
                              const EngineConfig& config) {
  config.validate();
  const int n = graph.node_count();
  double* lambda = state.lambda.data();
  double s[kMaxB + 1];
  SweepStats stats;
  for (int v = 0; v < n; ++v) {
    if (!smallest_adjusted(graph, lambda, v, config.b, s)) {
      throw DegreeError("node " + std::to_string(v) + " has degree <= b");
    }
    const double d = delta_for(s, config.b, config.update);
    lambda[v] += d;
    stats.max_abs_delta = std::max(stats.max_abs_delta, std::abs(d));
  }
  stats.dual_value = dual_objective_pooled(graph, state, config.b, nullptr);
  return stats;
}

DualState make_initial_state(const Graph& graph, const EngineConfig& config) {
  const int n = graph.node_count();
  DualState state;
  state.lambda.assign(static_cast<std::size_t>(n), 0.0);
  if (config.init == DualInit::kLocalMidpoint) {
    // One local update from zero: lambda_v = (c_b + c_{b+1}) / 2 over raw costs.
    double s[kMaxB + 1];
    for (int v = 0; v < n; ++v) {
      if (smallest_adjusted(graph, state.lambda.data(), v, config.b, s)) {
        state.lambda[static_cast<std::size_t>(v)] = 0.5 * (s[config.b - 1] + s[config.b]);
      }
    }
  }
  return state;
}

std::pair<DualState, ConvergenceReport> solve_duals(const Graph& graph,
                                                    const EngineConfig& config,
                                                    const std::optional<DualState>& initial) {
  config.validate();
  const auto t0 = std::chrono::steady_clock::now();

  DualState state = initial.has_value() ? *initial : make_initial_state(graph, config);
  if (static_cast<int>(state.lambda.size()) != graph.node_count()) {
    throw ArgumentError("solve_duals: initial state size does not match node count");
  }

  const double threshold = config.eps * graph.mean_cost();
  ThreadPool pool(config.threads > 0 ? config.threads : default_thread_count());
  std::vector<double> delta;

  ConvergenceReport report;
  report.final_max_abs_delta = std::numeric_limits<double>::infinity();
  for (int sweep = 1; sweep <= config.max_sweeps; ++sweep) {
    SweepStats stats = config.mode == SweepMode::kJacobi
                           ? jacobi_sweep(graph, state, config, pool, delta)
                           : gauss_seidel_sweep(graph, state, config);
    stats.sweep_index = sweep;
    report.sweeps = sweep;
    report.final_max_abs_delta = stats.max_abs_delta;
    report.dual_value = stats.dual_value;
    if (stats.max_abs_delta <= threshold) {
      report.converged = true;
      break;
    }
  }
  if (report.sweeps == 0) {
    report.dual_value = dual_objective_pooled(graph, state, config.b, &pool);
  }
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(state), report};
}

}  // namespace f2m
