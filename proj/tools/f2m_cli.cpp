// Command-line driver: solve fractional 2-matchings over TSPLIB or synthetic
// instances, export LP models, and emit benchmark reports.

#include <cmath>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "f2m/errors.hpp"
#include "f2m/oracle.hpp"
#include "f2m/solve.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSolveFailed = 2;
constexpr int kExitInputError = 3;

struct CliOptions {
  std::vector<std::string> inputs;
  std::vector<std::string> synthetic;  // "N,SEED"
  int k = 20;
  std::string mode = "jacobi";
  double eta = 0.5;
  double eps = 1e-9;
  int max_sweeps = 20000;
  double tol = 0.0;
  int max_restarts = 5;
  std::uint64_t seed = 0;
  double box = 1000.0;
  std::string export_lp_path;
  std::string solution_path;
  std::string report_path;
  std::string format = "csv";
  bool verify = false;
  int threads = 0;
};

f2m::RunConfig make_config(const CliOptions& opt) {
  f2m::RunConfig config;
  config.k = opt.k;
  config.engine.mode =
      opt.mode == "gauss-seidel" ? f2m::SweepMode::kGaussSeidel : f2m::SweepMode::kJacobi;
  config.engine.eta = opt.mode == "gauss-seidel" ? 1.0 : opt.eta;
  config.engine.eps = opt.eps;
  config.engine.max_sweeps = opt.max_sweeps;
  config.engine.threads = opt.threads;
  config.tol = opt.tol;
  config.max_restarts = opt.max_restarts;
  config.seed = opt.seed;
  return config;
}

std::vector<f2m::InstanceSource> make_sources(const CliOptions& opt) {
  std::vector<f2m::InstanceSource> sources;
  for (const auto& path : opt.inputs) {
    sources.push_back(f2m::InstanceSource::from_file(path));
  }
  for (const auto& spec : opt.synthetic) {
    const std::size_t comma = spec.find(',');
    if (comma == std::string::npos) {
      throw f2m::ArgumentError("--synthetic expects N,SEED, got '" + spec + "'");
    }
    const int n = std::stoi(spec.substr(0, comma));
    const std::uint64_t seed = std::stoull(spec.substr(comma + 1));
    sources.push_back(f2m::InstanceSource::synthetic(n, seed, opt.box));
  }
  return sources;
}

int solve_single(const f2m::InstanceSource& source, const CliOptions& opt,
                 const f2m::RunConfig& config) {
  const f2m::Instance instance = source.load();
  const int k = std::max(3, std::min(config.k, instance.node_count() - 1));
  const f2m::Graph graph = f2m::build_knn_graph(instance, k, config.engine.threads);

  if (!opt.export_lp_path.empty()) {
    std::ofstream out(opt.export_lp_path);
    if (!out) throw f2m::ArgumentError("cannot open '" + opt.export_lp_path + "'");
    f2m::write_lp(graph, out);
    std::cout << "wrote LP model to " << opt.export_lp_path << "\n";
  }

  f2m::SolveOutcome outcome;
  try {
    outcome = f2m::full_solve_graph(graph, config);
  } catch (const f2m::SolveFailed& e) {
    std::cerr << "solve failed: " << e.what() << "\n";
    return kExitSolveFailed;
  }

  std::cout << source.id() << ": nodes=" << instance.node_count()
            << " edges=" << graph.edge_count() << " objective=" << outcome.solution.objective
            << " gap=" << outcome.verification.duality_gap
            << " sweeps=" << outcome.convergence.sweeps << " restarts=" << outcome.restarts
            << " time=" << outcome.convergence.wall_time << "s\n";

  if (!opt.solution_path.empty()) {
    std::ofstream out(opt.solution_path);
    if (!out) throw f2m::ArgumentError("cannot open '" + opt.solution_path + "'");
    f2m::write_solution(graph, outcome.solution, outcome.verification, out);
    std::cout << "wrote solution to " << opt.solution_path << "\n";
  }

  if (opt.verify) {
    if (graph.edge_count() <= 20) {
      const f2m::OracleResult oracle = f2m::brute_force_f2m(graph);
      const double diff = std::abs(oracle.optimum - outcome.solution.objective);
      const double rel = diff / (1.0 + std::abs(oracle.optimum));
      std::cout << "oracle optimum=" << oracle.optimum << " (relative difference " << rel
                << ")\n";
      if (rel > 1e-6) {
        std::cerr << "verification against the oracle failed\n";
        return kExitSolveFailed;
      }
    } else {
      std::cout << "oracle skipped: " << graph.edge_count() << " edges exceed the cap of 20\n";
    }
  }
  return kExitOk;
}

int run(const CliOptions& opt) {
  const f2m::RunConfig config = make_config(opt);
  const std::vector<f2m::InstanceSource> sources = make_sources(opt);
  if (sources.empty()) {
    std::cerr << "no instances given; use --input or --synthetic\n";
    return kExitInputError;
  }

  if (sources.size() == 1 && opt.report_path.empty()) {
    return solve_single(sources.front(), opt, config);
  }

  const std::vector<f2m::BenchRow> rows = f2m::run_benchmark(sources, config);
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!opt.report_path.empty()) {
    file.open(opt.report_path);
    if (!file) throw f2m::ArgumentError("cannot open '" + opt.report_path + "'");
    out = &file;
  }
  if (opt.format == "json") {
    f2m::write_bench_json(rows, *out);
  } else {
    f2m::write_bench_csv(rows, *out);
  }
  for (const auto& row : rows) {
    if (!row.ok) return kExitSolveFailed;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fractional 2-matching solver (dual ascent over k-NN graphs)"};
  CliOptions opt;

  app.add_option("--input", opt.inputs, "TSPLIB file (repeatable)");
  app.add_option("--synthetic", opt.synthetic, "Synthetic instance N,SEED (repeatable)");
  app.add_option("--k", opt.k, "Neighbors per node for graph construction");
  app.add_option("--mode", opt.mode, "Sweep mode")
      ->check(CLI::IsMember({"jacobi", "gauss-seidel"}));
  app.add_option("--eta", opt.eta, "Jacobi damping factor in (0, 1]");
  app.add_option("--eps", opt.eps, "Convergence tolerance relative to mean edge cost");
  app.add_option("--max-sweeps", opt.max_sweeps, "Sweep budget per attempt");
  app.add_option("--tol", opt.tol, "Zero-band tolerance relative to mean cost (0 = auto)");
  app.add_option("--max-restarts", opt.max_restarts, "Jitter restarts on degeneracy");
  app.add_option("--seed", opt.seed, "Seed for the jitter stream");
  app.add_option("--box", opt.box, "Side length for synthetic instances");
  app.add_option("--export-lp", opt.export_lp_path, "Write the instance LP (CPLEX-LP format)");
  app.add_option("--solution", opt.solution_path, "Write the nonzero edges of the solution");
  app.add_option("--report", opt.report_path, "Write the benchmark report here");
  app.add_option("--format", opt.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_flag("--verify", opt.verify, "Cross-check with the exhaustive oracle (<= 20 edges)");
  app.add_option("--threads", opt.threads, "Worker threads (0 = hardware)");

  CLI11_PARSE(app, argc, argv);

  try {
    return run(opt);
  } catch (const f2m::SolveFailed& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitSolveFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
}
