#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "f2m/graph.hpp"

namespace f2m {

class ThreadPool;

/// One multiplier per node; the object the ascent mutates.
struct DualState {
  std::vector<double> lambda;
};

enum class SweepMode { kJacobi, kGaussSeidel };

/// Node update applied by the sweeps. kMidpoint shifts lambda_v by the mean
/// of the second- and third-shortest adjusted incident lengths, the exact
/// per-node maximizer of the dual objective. kPaperDifference applies the
/// raw half-difference of those two values instead; it is kept only for
/// experimentation and carries no convergence claim.
enum class UpdateRule { kMidpoint, kPaperDifference };

enum class DualInit { kLocalMidpoint, kZero };

struct EngineConfig {
  int b = 2;                  // per-node right-hand side (2 for F2M)
  double eta = 0.5;           // Jacobi damping; Gauss-Seidel always applies full steps
  double eps = 1e-9;          // convergence tolerance, relative to mean edge cost
  int max_sweeps = 20000;
  SweepMode mode = SweepMode::kJacobi;
  UpdateRule update = UpdateRule::kMidpoint;
  DualInit init = DualInit::kLocalMidpoint;
  int threads = 0;            // 0 = hardware concurrency

  void validate() const;  // throws ArgumentError
};

struct SweepStats {
  double max_abs_delta = 0.0;
  double dual_value = 0.0;
  int sweep_index = 0;
};

struct ConvergenceReport {
  bool converged = false;
  int sweeps = 0;
  double final_max_abs_delta = 0.0;
  double dual_value = 0.0;
  double wall_time = 0.0;  // seconds
};

/// Adjusted length v^e = c_e - lambda_u - lambda_w.
double adjusted_length(const Graph& graph, const DualState& state, int e);

/// Midpoint of the b-th and (b+1)-th smallest adjusted incident lengths at
/// node v (1-based positions). Adding the result to lambda_v re-centers those
/// two values symmetrically around zero. Throws DegreeError if degree <= b.
double node_update_delta(const Graph& graph, const DualState& state, int v, int b);

/// Simultaneous update of all nodes from a frozen snapshot of lambda;
/// applies eta-damped deltas. Deterministic for any thread count.
SweepStats jacobi_sweep(const Graph& graph, DualState& state, const EngineConfig& config);

/// In-place node updates in index order with full steps: exact coordinate
/// ascent on the dual objective. Single-threaded reference path.
SweepStats gauss_seidel_sweep(const Graph& graph, DualState& state, const EngineConfig& config);

/// g(lambda) = sum_v b*lambda_v + sum_e min(0, v^e): a lower bound on the
/// cost of every feasible fractional 2-matching.
double dual_objective(const Graph& graph, const DualState& state, int b = 2);

/// Runs sweeps of the configured mode until max |delta| <= eps * mean cost
/// or max_sweeps. The initial state defaults to the per-node local midpoint
/// of raw costs (one update from zero).
std::pair<DualState, ConvergenceReport> solve_duals(
    const Graph& graph, const EngineConfig& config,
    const std::optional<DualState>& initial = std::nullopt);

// Internal entry points reusing a caller-owned pool across sweeps.
SweepStats jacobi_sweep(const Graph& graph, DualState& state, const EngineConfig& config,
                        ThreadPool& pool, std::vector<double>& delta_scratch);
double dual_objective_pooled(const Graph& graph, const DualState& state, int b,
                             ThreadPool* pool);

/// Initial multipliers per the configured rule.
DualState make_initial_state(const Graph& graph, const EngineConfig& config);

}  // namespace f2m
