#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "f2m/dual.hpp"
#include "f2m/graph.hpp"

namespace f2m {

enum class EdgeSign : std::uint8_t { kNeg, kZero, kPos };

/// Per-edge sign of the adjusted length against the zero band [-tol, +tol].
struct EdgeClassification {
  std::vector<EdgeSign> label;
};

/// Edge values in {0, 1/2, 1} with their cost.
struct PrimalSolution {
  std::vector<double> value;
  double objective = 0.0;
};

struct VerificationReport {
  bool feasible = false;
  std::vector<std::pair<int, double>> violated_nodes;  // (node, incident value sum)
  double duality_gap = 0.0;
  std::vector<int> value_violations;  // edges with values outside {0, 1/2, 1}
};

/// kNeg if v^e < -tol, kPos if v^e > +tol, kZero otherwise.
/// Throws ArgumentError (tol <= 0).
EdgeClassification classify_edges(const Graph& graph, const DualState& state, double tol);

/// Recovers the primal from the sign pattern: negative edges take value 1,
/// positive edges 0, and each connected component of the zero band is
/// completed exhaustively over {0, 1/2, 1} to meet every node's residual
/// exactly (minimum cost among feasible completions). Throws
/// DegenerateExtraction when a node carries more than 2 negative edges, a
/// zero component exceeds 20 edges, or no completion exists.
PrimalSolution extract_primal(const Graph& graph, const DualState& state, double tol);

/// Checks incident sums are exactly 2 and values are exactly in {0, 1/2, 1};
/// reports the duality gap against g(lambda). Never throws; failures are in
/// the report.
VerificationReport verify_solution(const Graph& graph, const PrimalSolution& solution,
                                   const DualState& state);

/// Nonzero edges as "u v value" lines with a trailing objective/gap line.
void write_solution(const Graph& graph, const PrimalSolution& solution,
                    const VerificationReport& report, std::ostream& out);

/// Exhaustive completion of one zero component: edge ids plus per-node
/// residuals. Exposed for tests. Returns per-edge values aligned with
/// component_edges, or empty if no feasible completion exists.
std::vector<double> solve_zero_component(const Graph& graph,
                                         const std::vector<int>& component_edges,
                                         const std::vector<int>& residual);

}  // namespace f2m
