#pragma once

#include <stdexcept>
#include <string>

namespace f2m {

/// Malformed or truncated TSPLIB input.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration value.
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Node or edge id out of range.
struct IndexError : std::out_of_range {
  using std::out_of_range::out_of_range;
};

/// Graph has a node of degree < 3, too small for the node update.
struct MinDegreeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Duplicate edge or self-loop in the edge list.
struct StructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Node degree too small for the requested update position.
struct DegreeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Primal extraction hit a degenerate dual: oversized zero component,
/// infeasible component assignment, or a node with more than b tight edges.
struct DegenerateExtraction : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Instance exceeds the oracle's enumeration cap.
struct TooLarge : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// No assignment satisfies the degree constraints.
struct Infeasible : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Restart budget exhausted without a verified solution.
struct SolveFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace f2m
