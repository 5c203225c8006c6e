#include "f2m/solve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "f2m/errors.hpp"

namespace f2m {

double RunConfig::effective_tol() const {
  return tol > 0.0 ? tol : std::max(1e-7, 10.0 * engine.eps);
}

void RunConfig::validate() const {
  engine.validate();
  if (k < 3) throw ArgumentError("RunConfig: k must be >= 3");
  if (tol < 0.0) throw ArgumentError("RunConfig: tol must be >= 0");
  if (!(gap_tol > 0.0)) throw ArgumentError("RunConfig: gap_tol must be > 0");
  if (max_restarts < 0) throw ArgumentError("RunConfig: max_restarts must be >= 0");
  if (perturb_scale < 0.0) throw ArgumentError("RunConfig: perturb_scale must be >= 0");
}

namespace {

// Tolerance scale: mean edge cost, with a fallback so all-zero-cost graphs
// (coincident points) keep positive bands and jitter.
double cost_scale(const Graph& graph) {
  return graph.mean_cost() > 0.0 ? graph.mean_cost() : 1.0;
}

// Uniform jitter in [0, perturb_scale * mean cost), one stream per
// (seed, restart) pair.
Graph jittered(const Graph& graph, std::uint64_t seed, int restart, double perturb_scale) {
  const double amplitude = perturb_scale * cost_scale(graph);
  SplitMix64 rng(seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(restart));
  std::vector<double> costs(static_cast<std::size_t>(graph.edge_count()));
  for (int e = 0; e < graph.edge_count(); ++e) {
    costs[static_cast<std::size_t>(e)] = graph.edge(e).cost + amplitude * rng.next_double();
  }
  return graph.with_costs(costs);
}

}  // namespace

SolveOutcome full_solve_graph(const Graph& graph, const RunConfig& config) {
  config.validate();
  validate_graph(graph);

  std::string last_failure = "no attempt made";
  for (int restart = 0; restart <= config.max_restarts; ++restart) {
    Graph attempt_graph;
    const Graph* solving = &graph;
    if (restart > 0) {
      attempt_graph = jittered(graph, config.seed, restart, config.perturb_scale);
      solving = &attempt_graph;
    }

    auto [state, report] = solve_duals(*solving, config.engine);

    PrimalSolution solution;
    try {
      solution = extract_primal(*solving, state, config.effective_tol() * cost_scale(*solving));
    } catch (const DegenerateExtraction& e) {
      last_failure = e.what();
      continue;
    }

    // Certify against the unperturbed costs: weak duality holds for any
    // multipliers, so g(lambda) on the original graph stays a valid bound.
    double objective = 0.0;
    for (int e = 0; e < graph.edge_count(); ++e) {
      objective += graph.edge(e).cost * solution.value[static_cast<std::size_t>(e)];
    }
    solution.objective = objective;
    VerificationReport verification = verify_solution(graph, solution, state);
    const double scale = 1.0 + std::abs(solution.objective);
    if (verification.feasible && verification.duality_gap <= config.gap_tol * scale) {
      SolveOutcome outcome;
      outcome.solution = std::move(solution);
      outcome.verification = std::move(verification);
      outcome.convergence = report;
      outcome.duals = std::move(state);
      outcome.restarts = restart;
      return outcome;
    }
    std::ostringstream oss;
    oss << "uncertified attempt: feasible=" << verification.feasible
        << " gap=" << verification.duality_gap;
    last_failure = oss.str();
  }
  throw SolveFailed("restarts exhausted (" + std::to_string(config.max_restarts) +
                    "); last failure: " + last_failure);
}

SolveOutcome full_solve(const Instance& instance, const RunConfig& config) {
  config.validate();
  const int k = std::min(config.k, instance.node_count() - 1);
  const Graph graph = build_knn_graph(instance, std::max(k, 3), config.engine.threads);
  return full_solve_graph(graph, config);
}

void write_lp(const Graph& graph, std::ostream& out) {
  if (graph.edge_count() == 0) throw ArgumentError("write_lp: empty graph");
  char buf[128];

  auto var = [&](int e) {
    const GraphEdge& ge = graph.edge(e);
    return "x_" + std::to_string(ge.u) + "_" + std::to_string(ge.v);
  };

  out << "Minimize\n obj:";
  for (int e = 0; e < graph.edge_count(); ++e) {
    std::snprintf(buf, sizeof(buf), "%s %.17g %s", e == 0 ? "" : " +",
                  graph.edge(e).cost, var(e).c_str());
    out << buf;
  }
  out << "\nSubject To\n";
  for (int v = 0; v < graph.node_count(); ++v) {
    out << " deg_" << v << ":";
    bool first = true;
    for (int e : graph.incident(v)) {
      out << (first ? " " : " + ") << var(e);
      first = false;
    }
    out << " = 2\n";
  }
  out << "Bounds\n";
  for (int e = 0; e < graph.edge_count(); ++e) {
    out << " 0 <= " << var(e) << " <= 1\n";
  }
  out << "End\n";
}

InstanceSource InstanceSource::from_file(std::string p) {
  InstanceSource s;
  s.path = std::move(p);
  return s;
}

InstanceSource InstanceSource::synthetic(int n, std::uint64_t seed, double box) {
  InstanceSource s;
  s.synthetic_n = n;
  s.seed = seed;
  s.box = box;
  return s;
}

Instance InstanceSource::load() const {
  if (!path.empty()) return load_tsplib_file(path);
  return generate_instance(synthetic_n, seed, box);
}

std::string InstanceSource::id() const {
  if (!path.empty()) {
    const std::size_t slash = path.find_last_of("/\\");
    std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
    const std::size_t dot = base.find_last_of('.');
    return dot == std::string::npos ? base : base.substr(0, dot);
  }
  return "rand" + std::to_string(synthetic_n) + "-s" + std::to_string(seed);
}

std::vector<BenchRow> run_benchmark(const std::vector<InstanceSource>& sources,
                                    const RunConfig& config) {
  std::vector<BenchRow> rows;
  rows.reserve(sources.size());
  for (const auto& source : sources) {
    BenchRow row;
    row.instance = source.id();
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const Instance instance = source.load();
      row.nodes = instance.node_count();
      const int k = std::max(3, std::min(config.k, instance.node_count() - 1));
      const Graph graph = build_knn_graph(instance, k, config.engine.threads);
      row.edges = graph.edge_count();
      SolveOutcome outcome = full_solve_graph(graph, config);
      row.sweeps = outcome.convergence.sweeps;
      row.gap = outcome.verification.duality_gap;
      row.restarts = outcome.restarts;
      row.ok = true;
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
      row.gap = std::nan("");
    }
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out) {
  out << "instance,nodes,edges,sweeps,seconds,gap,restarts\n";
  char buf[256];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%s,%d,%d,%d,%.6f,%.12g,%d\n", r.instance.c_str(),
                  r.nodes, r.edges, r.sweeps, r.seconds, r.gap, r.restarts);
    out << buf;
  }
}

void write_bench_json(const std::vector<BenchRow>& rows, std::ostream& out) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row = {
        {"instance", r.instance}, {"nodes", r.nodes},       {"edges", r.edges},
        {"sweeps", r.sweeps},     {"seconds", r.seconds},   {"restarts", r.restarts},
        {"ok", r.ok},
    };
    if (std::isnan(r.gap)) {
      row["gap"] = nullptr;
    } else {
      row["gap"] = r.gap;
    }
    if (!r.error.empty()) row["error"] = r.error;
    doc.push_back(std::move(row));
  }
  out << doc.dump(2) << "\n";
}

}  // namespace f2m
