#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace f2m {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// How edge costs are derived from coordinates.
/// kEuc2dRounded is the TSPLIB EUC_2D convention (nearest-integer Euclidean);
/// kEuc2dExact keeps the unrounded value.
enum class DistanceMode { kEuc2dRounded, kEuc2dExact };

struct Instance {
  std::string name;
  std::vector<Point> points;
  DistanceMode mode = DistanceMode::kEuc2dRounded;

  int node_count() const { return static_cast<int>(points.size()); }
};

/// Parses a TSPLIB-style EUC_2D instance. Requires DIMENSION and
/// NODE_COORD_SECTION; 1-based node indices map to 0-based positions;
/// unknown keywords are ignored. Throws ParseError.
Instance parse_tsplib(std::istream& in);
Instance parse_tsplib_string(const std::string& text);
Instance load_tsplib_file(const std::string& path);

/// Writes the instance back out in the same TSPLIB subset with full-precision
/// coordinates, so exact-mode instances round-trip bit-for-bit.
void serialize_tsplib(const Instance& instance, std::ostream& out);

/// Cost of edge (i, j) under the instance's distance mode. Symmetric,
/// zero on the diagonal. Throws IndexError on out-of-range nodes.
double distance(const Instance& instance, int i, int j);

/// n points drawn uniformly from [0, box]^2, a pure function of
/// (n, seed, box). Uses SplitMix64 so golden values are platform-stable.
/// Synthetic instances default to exact distances. Throws ArgumentError.
Instance generate_instance(int n, std::uint64_t seed, double box = 1000.0);

/// SplitMix64: the fixed generator behind generate_instance and cost jitter.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

}  // namespace f2m
