#include <cmath>
#include <sstream>

#include <doctest.h>

#include "f2m/errors.hpp"
#include "f2m/oracle.hpp"
#include "f2m/solve.hpp"
#include "test_support.hpp"

using namespace f2m;
using namespace f2m::test;

TEST_CASE("full_solve certifies the unit square") {
  RunConfig config;
  config.k = 3;
  const SolveOutcome outcome = full_solve(unit_square(), config);
  CHECK(outcome.verification.feasible);
  CHECK(outcome.solution.objective == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(std::abs(outcome.verification.duality_gap) <= 1e-9);
  CHECK(outcome.restarts == 0);
}

TEST_CASE("full_solve matches the oracle on small complete graphs") {
  int solved_without_restart = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int n = 6 + static_cast<int>(seed % 5);
    const Instance inst = generate_instance(n, seed, 100.0);
    RunConfig config;
    config.k = n - 1;
    config.seed = seed;
    const SolveOutcome outcome = full_solve(inst, config);
    const OracleResult oracle = brute_force_f2m(complete_graph(inst), 45);
    CHECK(outcome.verification.feasible);
    CHECK(std::abs(outcome.solution.objective - oracle.optimum) <=
          1e-6 * (1.0 + std::abs(oracle.optimum)));
    for (double x : outcome.solution.value) {
      CHECK((x == 0.0 || x == 0.5 || x == 1.0));
    }
    solved_without_restart += outcome.restarts == 0 ? 1 : 0;
  }
  CHECK(solved_without_restart >= 45);
}

TEST_CASE("fully tied costs converge through the restart loop") {
  // four co-circular points under rounded costs: all six pairwise costs equal
  Instance inst;
  inst.mode = DistanceMode::kEuc2dRounded;
  inst.points = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
  const Graph g = complete_graph(inst);
  for (const GraphEdge& e : g.edges()) CHECK(e.cost == 1.0);

  RunConfig config;
  config.k = 3;
  const SolveOutcome outcome = full_solve(inst, config);
  CHECK(outcome.verification.feasible);
  CHECK(outcome.solution.objective == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(outcome.restarts <= 5);
}

TEST_CASE("coincident points solve at objective zero") {
  Instance inst;
  inst.mode = DistanceMode::kEuc2dExact;
  inst.points.assign(4, Point{3.0, 3.0});
  RunConfig config;
  config.k = 3;
  const SolveOutcome outcome = full_solve(inst, config);
  CHECK(outcome.verification.feasible);
  CHECK(outcome.solution.objective == 0.0);
}

TEST_CASE("restart jitter is reproducible") {
  const Instance inst = generate_instance(8, 3, 100.0);
  RunConfig config;
  config.k = 7;
  config.seed = 17;
  const SolveOutcome a = full_solve(inst, config);
  const SolveOutcome b = full_solve(inst, config);
  CHECK(a.restarts == b.restarts);
  CHECK(a.solution.objective == b.solution.objective);
  CHECK(a.solution.value == b.solution.value);
}

TEST_CASE("max_restarts = 0 equals the single-pass pipeline") {
  const Instance inst = generate_instance(20, 4, 100.0);
  RunConfig config;
  config.k = 6;
  config.max_restarts = 0;
  const SolveOutcome outcome = full_solve(inst, config);

  const Graph g = build_knn_graph(inst, 6);
  auto [state, report] = solve_duals(g, config.engine);
  const PrimalSolution direct =
      extract_primal(g, state, config.effective_tol() * g.mean_cost());
  CHECK(outcome.solution.value == direct.value);
  CHECK(outcome.solution.objective == direct.objective);
}

TEST_CASE("LP export emits the expected structure") {
  const Graph g = complete_graph(unit_square());
  std::ostringstream out;
  write_lp(g, out);
  const std::string text = out.str();

  std::ostringstream again;
  write_lp(g, again);
  CHECK(text == again.str());  // byte-identical per graph

  CHECK(text.find("Minimize") == 0);
  CHECK(text.find("x_0_1") != std::string::npos);
  CHECK(text.find("deg_3: x_0_3 + x_1_3 + x_2_3 = 2") != std::string::npos);

  int equality_rows = 0, bound_lines = 0;
  std::istringstream lines(text);
  std::string line;
  int obj_vars = 0;
  while (std::getline(lines, line)) {
    if (line.find(" = 2") != std::string::npos) ++equality_rows;
    if (line.find("<=") != std::string::npos && line.find("0 <= x_") != std::string::npos) {
      ++bound_lines;
    }
    if (line.rfind(" obj:", 0) == 0) {
      std::size_t pos = 0;
      while ((pos = line.find("x_", pos)) != std::string::npos) {
        ++obj_vars;
        pos += 2;
      }
    }
  }
  CHECK(obj_vars == 6);
  CHECK(equality_rows == 4);
  CHECK(bound_lines == 6);

  std::ostringstream empty_out;
  CHECK_THROWS_AS(write_lp(Graph::from_edges(3, {}), empty_out), ArgumentError);
}

TEST_CASE("benchmark rows capture successes and failures") {
  RunConfig config;
  config.k = 5;
  CHECK(run_benchmark({}, config).empty());

  std::vector<InstanceSource> sources;
  sources.push_back(InstanceSource::synthetic(30, 2, 100.0));
  sources.push_back(InstanceSource::from_file("/nonexistent/file.tsp"));
  sources.push_back(InstanceSource::synthetic(25, 5, 100.0));
  const std::vector<BenchRow> rows = run_benchmark(sources, config);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].ok);
  CHECK(rows[0].nodes == 30);
  CHECK(rows[0].edges > 0);
  CHECK_FALSE(rows[1].ok);
  CHECK_FALSE(rows[1].error.empty());
  CHECK(rows[2].ok);

  std::ostringstream csv;
  write_bench_csv(rows, csv);
  CHECK(csv.str().rfind("instance,nodes,edges,sweeps,seconds,gap,restarts\n", 0) == 0);
  int lines = 0;
  for (char c : csv.str()) lines += c == '\n' ? 1 : 0;
  CHECK(lines == 4);

  std::ostringstream json;
  write_bench_json(rows, json);
  CHECK(json.str().find("\"instance\"") != std::string::npos);
  CHECK(json.str().find("\"error\"") != std::string::npos);
}

TEST_CASE("xqf131 fixture solves through the benchmark path") {
  RunConfig config;
  config.k = 20;
  const std::vector<BenchRow> rows =
      run_benchmark({InstanceSource::from_file(std::string(F2M_DATA_DIR) + "/xqf131.tsp")},
                    config);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].instance == "xqf131");
  CHECK(rows[0].nodes == 131);
  CHECK(rows[0].ok);
}

TEST_CASE("config validation") {
  RunConfig config;
  config.k = 2;
  CHECK_THROWS_AS(full_solve(unit_square(), config), ArgumentError);
  config.k = 3;
  config.max_restarts = -1;
  CHECK_THROWS_AS(full_solve(unit_square(), config), ArgumentError);
  config.max_restarts = 0;
  config.perturb_scale = -0.5;
  CHECK_THROWS_AS(full_solve(unit_square(), config), ArgumentError);

  RunConfig defaults;
  CHECK(defaults.effective_tol() == doctest::Approx(1e-7));
  defaults.engine.eps = 1e-6;
  CHECK(defaults.effective_tol() == doctest::Approx(1e-5));
  defaults.tol = 1e-4;
  CHECK(defaults.effective_tol() == doctest::Approx(1e-4));
}
