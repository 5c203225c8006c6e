#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "f2m/dual.hpp"
#include "f2m/graph.hpp"
#include "f2m/instance.hpp"
#include "f2m/primal.hpp"

namespace f2m {

struct RunConfig {
  int k = 20;                    // neighbors per node for graph construction
  EngineConfig engine;
  double tol = 0.0;              // zero-band tolerance relative to mean cost;
                                 // 0 = max(1e-7, 10 * engine.eps)
  double gap_tol = 1e-6;         // relative duality gap certifying optimality
  int max_restarts = 5;
  double perturb_scale = 1e-7;   // jitter amplitude relative to mean cost
  std::uint64_t seed = 0;        // jitter stream seed

  double effective_tol() const;  // resolved relative zero-band tolerance
  void validate() const;         // throws ArgumentError
};

struct SolveOutcome {
  PrimalSolution solution;        // values on the unperturbed graph
  VerificationReport verification;
  ConvergenceReport convergence;  // from the successful attempt
  DualState duals;
  int restarts = 0;               // restarts consumed before success
};

/// End-to-end pipeline: k-NN graph, dual ascent, extraction, verification.
/// Degenerate or uncertified attempts restart with deterministic uniform
/// cost jitter; the reported objective and gap are always against the
/// original costs. Throws SolveFailed when restarts are exhausted.
SolveOutcome full_solve(const Instance& instance, const RunConfig& config);

/// Same pipeline on a prebuilt (validated) graph.
SolveOutcome full_solve_graph(const Graph& graph, const RunConfig& config);

/// F2M as a CPLEX-LP text model: minimize edge costs subject to one
/// degree-2 equality per node and unit bounds per edge. Variables are named
/// x_{u}_{v} with u < v; output is byte-stable for a given graph.
/// Throws ArgumentError on an empty graph.
void write_lp(const Graph& graph, std::ostream& out);

struct BenchRow {
  std::string instance;
  int nodes = 0;
  int edges = 0;
  int sweeps = 0;
  double seconds = 0.0;
  double gap = 0.0;
  int restarts = 0;
  bool ok = false;
  std::string error;
};

/// An instance to benchmark: a TSPLIB path or a synthetic size/seed pair.
struct InstanceSource {
  std::string path;        // empty for synthetic
  int synthetic_n = 0;
  std::uint64_t seed = 0;
  double box = 1000.0;

  static InstanceSource from_file(std::string p);
  static InstanceSource synthetic(int n, std::uint64_t seed, double box = 1000.0);
  Instance load() const;
  std::string id() const;
};

/// Runs full_solve per source; failures are recorded in the row and the run
/// continues. Timings are reported, never asserted.
std::vector<BenchRow> run_benchmark(const std::vector<InstanceSource>& sources,
                                    const RunConfig& config);

void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);
void write_bench_json(const std::vector<BenchRow>& rows, std::ostream& out);

}  // namespace f2m
