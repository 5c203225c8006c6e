#pragma once

#include <cstdint>

#include "f2m/graph.hpp"
#include "f2m/primal.hpp"

namespace f2m {

struct OracleResult {
  double optimum = 0.0;
  PrimalSolution solution;
  std::uint64_t enumerated = 0;  // feasible complete assignments visited
};

/// Exact minimum-cost fractional 2-matching by exhaustive enumeration of
/// per-edge values in {0, 1/2, 1} (half-integrality of the optimum makes the
/// grid exact). DFS carries running per-node sums: partial sums above 2 are
/// cut, nodes with no unassigned edges left are pinned to exactly 2, and
/// branches whose cost plus an admissible completion bound cannot beat the
/// incumbent are cut. Independent of the dual engine.
///
/// Throws TooLarge (edge count above max_edges) and Infeasible.
OracleResult brute_force_f2m(const Graph& graph, int max_edges = 20);

}  // namespace f2m
