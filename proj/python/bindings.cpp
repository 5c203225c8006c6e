#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "f2m/dual.hpp"
#include "f2m/errors.hpp"
#include "f2m/graph.hpp"
#include "f2m/instance.hpp"
#include "f2m/oracle.hpp"
#include "f2m/primal.hpp"
#include "f2m/solve.hpp"

namespace py = pybind11;

namespace {

f2m::EngineConfig make_engine_config(int b, double eta, double eps, int max_sweeps,
                                     const std::string& mode, const std::string& update,
                                     const std::string& init, int threads) {
  f2m::EngineConfig config;
  config.b = b;
  config.eta = eta;
  config.eps = eps;
  config.max_sweeps = max_sweeps;
  config.mode = mode == "gauss-seidel" ? f2m::SweepMode::kGaussSeidel : f2m::SweepMode::kJacobi;
  config.update = update == "paper-difference" ? f2m::UpdateRule::kPaperDifference
                                               : f2m::UpdateRule::kMidpoint;
  config.init = init == "zero" ? f2m::DualInit::kZero : f2m::DualInit::kLocalMidpoint;
  config.threads = threads;
  config.validate();
  return config;
}

}  // namespace

PYBIND11_MODULE(_f2m, m) {
  m.doc() = "Fractional 2-matching solver: dual ascent over k-NN graphs";

  py::register_exception<f2m::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<f2m::DegenerateExtraction>(m, "DegenerateExtraction",
                                                    PyExc_RuntimeError);
  py::register_exception<f2m::TooLarge>(m, "TooLarge", PyExc_ValueError);
  py::register_exception<f2m::Infeasible>(m, "Infeasible", PyExc_RuntimeError);
  py::register_exception<f2m::SolveFailed>(m, "SolveFailed", PyExc_RuntimeError);

  py::enum_<f2m::DistanceMode>(m, "DistanceMode")
      .value("EUC2D_ROUNDED", f2m::DistanceMode::kEuc2dRounded)
      .value("EUC2D_EXACT", f2m::DistanceMode::kEuc2dExact);

  py::class_<f2m::Instance>(m, "Instance")
      .def_readonly("name", &f2m::Instance::name)
      .def_readwrite("mode", &f2m::Instance::mode)
      .def_property_readonly("points",
                             [](const f2m::Instance& inst) {
                               std::vector<std::pair<double, double>> pts;
                               pts.reserve(inst.points.size());
                               for (const auto& p : inst.points) pts.emplace_back(p.x, p.y);
                               return pts;
                             })
      .def("__len__", &f2m::Instance::node_count)
      .def("distance", [](const f2m::Instance& inst, int i, int j) {
        return f2m::distance(inst, i, j);
      });

  m.def("parse_tsplib", &f2m::parse_tsplib_string, py::arg("text"));
  m.def("load_tsplib", &f2m::load_tsplib_file, py::arg("path"));
  m.def(
      "serialize_tsplib",
      [](const f2m::Instance& instance) {
        std::ostringstream out;
        f2m::serialize_tsplib(instance, out);
        return out.str();
      },
      py::arg("instance"));
  m.def("generate_instance", &f2m::generate_instance, py::arg("n"), py::arg("seed"),
        py::arg("box") = 1000.0);

  py::class_<f2m::Graph>(m, "Graph")
      .def_property_readonly("n", &f2m::Graph::node_count)
      .def_property_readonly("m", &f2m::Graph::edge_count)
      .def("edges",
           [](const f2m::Graph& g) {
             std::vector<std::tuple<int, int, double>> out;
             out.reserve(g.edges().size());
             for (const auto& e : g.edges()) out.emplace_back(e.u, e.v, e.cost);
             return out;
           })
      .def("degree", &f2m::Graph::degree)
      .def("mean_cost", &f2m::Graph::mean_cost);

  m.def(
      "build_knn_graph",
      [](const f2m::Instance& instance, int k, int threads) {
        return f2m::build_knn_graph(instance, k, threads);
      },
      py::arg("instance"), py::arg("k"), py::arg("threads") = 0,
      py::call_guard<py::gil_scoped_release>());
  m.def("validate_graph", [](const f2m::Graph& g) {
    const f2m::GraphReport r = f2m::validate_graph(g);
    return py::dict(py::arg("min_degree") = r.min_degree, py::arg("max_degree") = r.max_degree,
                    py::arg("edge_count") = r.edge_count);
  });

  py::class_<f2m::DualState>(m, "DualState")
      .def_readwrite("lam", &f2m::DualState::lambda);

  m.def("dual_objective", &f2m::dual_objective, py::arg("graph"), py::arg("state"),
        py::arg("b") = 2);
  m.def("adjusted_length", &f2m::adjusted_length, py::arg("graph"), py::arg("state"),
        py::arg("edge"));
  m.def("node_update_delta", &f2m::node_update_delta, py::arg("graph"), py::arg("state"),
        py::arg("node"), py::arg("b") = 2);

  m.def(
      "solve_duals",
      [](const f2m::Graph& graph, int b, double eta, double eps, int max_sweeps,
         const std::string& mode, const std::string& update, const std::string& init,
         int threads) {
        const f2m::EngineConfig config =
            make_engine_config(b, eta, eps, max_sweeps, mode, update, init, threads);
        auto [state, report] = f2m::solve_duals(graph, config);
        py::dict rep(py::arg("converged") = report.converged, py::arg("sweeps") = report.sweeps,
                     py::arg("final_max_abs_delta") = report.final_max_abs_delta,
                     py::arg("dual_value") = report.dual_value,
                     py::arg("wall_time") = report.wall_time);
        return py::make_tuple(state, rep);
      },
      py::arg("graph"), py::arg("b") = 2, py::arg("eta") = 0.5, py::arg("eps") = 1e-9,
      py::arg("max_sweeps") = 20000, py::arg("mode") = "jacobi",
      py::arg("update") = "midpoint", py::arg("init") = "local-midpoint",
      py::arg("threads") = 0);

  py::class_<f2m::PrimalSolution>(m, "PrimalSolution")
      .def_readonly("value", &f2m::PrimalSolution::value)
      .def_readonly("objective", &f2m::PrimalSolution::objective);

  m.def("extract_primal", &f2m::extract_primal, py::arg("graph"), py::arg("state"),
        py::arg("tol"));
  m.def("verify_solution", [](const f2m::Graph& graph, const f2m::PrimalSolution& solution,
                              const f2m::DualState& state) {
    const f2m::VerificationReport r = f2m::verify_solution(graph, solution, state);
    return py::dict(py::arg("feasible") = r.feasible,
                    py::arg("violated_nodes") = r.violated_nodes,
                    py::arg("duality_gap") = r.duality_gap,
                    py::arg("value_violations") = r.value_violations);
  });

  m.def("brute_force_f2m", [](const f2m::Graph& graph, int max_edges) {
    const f2m::OracleResult r = f2m::brute_force_f2m(graph, max_edges);
    return py::dict(py::arg("optimum") = r.optimum, py::arg("value") = r.solution.value,
                    py::arg("enumerated") = r.enumerated);
  }, py::arg("graph"), py::arg("max_edges") = 20);

  m.def(
      "full_solve",
      [](const f2m::Instance& instance, int k, double eta, double eps, int max_sweeps,
         const std::string& mode, double tol, int max_restarts, std::uint64_t seed,
         int threads) {
        f2m::RunConfig config;
        config.k = k;
        config.engine = make_engine_config(2, eta, eps, max_sweeps, mode, "midpoint",
                                           "local-midpoint", threads);
        config.tol = tol;
        config.max_restarts = max_restarts;
        config.seed = seed;
        f2m::SolveOutcome outcome;
        {
          py::gil_scoped_release release;
          outcome = f2m::full_solve(instance, config);
        }
        return py::dict(py::arg("objective") = outcome.solution.objective,
                        py::arg("value") = outcome.solution.value,
                        py::arg("feasible") = outcome.verification.feasible,
                        py::arg("gap") = outcome.verification.duality_gap,
                        py::arg("sweeps") = outcome.convergence.sweeps,
                        py::arg("restarts") = outcome.restarts,
                        py::arg("duals") = outcome.duals.lambda);
      },
      py::arg("instance"), py::arg("k") = 20, py::arg("eta") = 0.5, py::arg("eps") = 1e-9,
      py::arg("max_sweeps") = 20000, py::arg("mode") = "jacobi", py::arg("tol") = 0.0,
      py::arg("max_restarts") = 5, py::arg("seed") = 0, py::arg("threads") = 0);

  m.def("write_lp", [](const f2m::Graph& graph) {
    std::ostringstream out;
    f2m::write_lp(graph, out);
    return out.str();
  });
}
