"""Fractional 2-matching solver: dual ascent over k-NN graphs of 2D instances."""

from ._f2m import (
    DegenerateExtraction,
    DistanceMode,
    DualState,
    Graph,
    Infeasible,
    Instance,
    ParseError,
    PrimalSolution,
    SolveFailed,
    TooLarge,
    adjusted_length,
    brute_force_f2m,
    build_knn_graph,
    dual_objective,
    extract_primal,
    full_solve,
    generate_instance,
    load_tsplib,
    node_update_delta,
    parse_tsplib,
    serialize_tsplib,
    solve_duals,
    validate_graph,
    verify_solution,
    write_lp,
)

__all__ = [
    "DegenerateExtraction",
    "DistanceMode",
    "DualState",
    "Graph",
    "Infeasible",
    "Instance",
    "ParseError",
    "PrimalSolution",
    "SolveFailed",
    "TooLarge",
    "adjusted_length",
    "brute_force_f2m",
    "build_knn_graph",
    "dual_objective",
    "extract_primal",
    "full_solve",
    "generate_instance",
    "load_tsplib",
    "node_update_delta",
    "parse_tsplib",
    "serialize_tsplib",
    "solve_duals",
    "validate_graph",
    "verify_solution",
    "write_lp",
]

__version__ = "0.1.0"
