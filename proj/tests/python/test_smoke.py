"""Smoke tests for the f2m extension module."""

import math
import os

import pytest

import f2m

DATA_DIR = os.environ.get("F2M_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))

SQUARE = "\n".join(
    [
        "NAME : square",
        "TYPE : TSP",
        "DIMENSION : 4",
        "EDGE_WEIGHT_TYPE : EUC_2D",
        "NODE_COORD_SECTION",
        "1 0 0",
        "2 1 0",
        "3 1 1",
        "4 0 1",
        "EOF",
    ]
)


def unit_square():
    inst = f2m.parse_tsplib(SQUARE)
    inst.mode = f2m.DistanceMode.EUC2D_EXACT
    return inst


def test_parse_and_distance():
    inst = f2m.parse_tsplib(SQUARE)
    assert len(inst) == 4
    assert inst.name == "square"
    assert inst.mode == f2m.DistanceMode.EUC2D_ROUNDED
    assert inst.distance(0, 1) == 1.0
    assert inst.distance(0, 2) == 1.0  # rounded sqrt(2)
    inst.mode = f2m.DistanceMode.EUC2D_EXACT
    assert inst.distance(0, 2) == pytest.approx(math.sqrt(2.0), abs=1e-15)


def test_parse_error():
    with pytest.raises(ValueError):
        f2m.parse_tsplib("DIMENSION : 3\n")


def test_round_trip():
    inst = f2m.generate_instance(17, seed=5, box=250.0)
    back = f2m.parse_tsplib(f2m.serialize_tsplib(inst))
    assert [p for p in back.points] == [p for p in inst.points]


def test_full_solve_square():
    result = f2m.full_solve(unit_square(), k=3)
    assert result["feasible"]
    assert result["objective"] == pytest.approx(4.0, abs=1e-9)
    assert abs(result["gap"]) <= 1e-9
    assert result["restarts"] == 0
    assert sorted(set(result["value"])) == [0.0, 1.0]


def test_solver_matches_oracle():
    inst = f2m.generate_instance(8, seed=3, box=100.0)
    graph = f2m.build_knn_graph(inst, k=7)
    assert graph.n == 8 and graph.m == 28
    oracle = f2m.brute_force_f2m(graph, max_edges=28)
    result = f2m.full_solve(inst, k=7)
    assert result["objective"] == pytest.approx(oracle["optimum"], rel=1e-6)


def test_dual_pipeline_pieces():
    inst = unit_square()
    graph = f2m.build_knn_graph(inst, k=3)
    report = f2m.validate_graph(graph)
    assert report["min_degree"] == 3

    state, conv = f2m.solve_duals(graph, mode="gauss-seidel")
    assert conv["converged"]
    assert conv["dual_value"] == pytest.approx(4.0, abs=1e-6)
    assert f2m.dual_objective(graph, state) == pytest.approx(4.0, abs=1e-6)

    solution = f2m.extract_primal(graph, state, tol=1e-7 * graph.mean_cost())
    verdict = f2m.verify_solution(graph, solution, state)
    assert verdict["feasible"]
    assert abs(verdict["duality_gap"]) <= 1e-9


def test_oracle_too_large():
    inst = f2m.generate_instance(10, seed=1, box=100.0)
    graph = f2m.build_knn_graph(inst, k=9)
    with pytest.raises(ValueError):
        f2m.brute_force_f2m(graph)


def test_write_lp():
    graph = f2m.build_knn_graph(unit_square(), k=3)
    text = f2m.write_lp(graph)
    assert text.startswith("Minimize")
    assert text.count("= 2") == 4
    assert text.count("0 <= x_") == 6


def test_load_fixture():
    inst = f2m.load_tsplib(os.path.join(DATA_DIR, "xqf131.tsp"))
    assert len(inst) == 131
