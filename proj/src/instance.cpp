#include "f2m/instance.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "f2m/errors.hpp"

namespace f2m {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string upper(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return s;
}

// Splits "KEY : value" / "KEY: value" / bare "KEY".
std::pair<std::string, std::string> split_keyword(const std::string& line) {
  std::size_t colon = line.find(':');
  if (colon == std::string::npos) return {upper(trim(line)), ""};
  return {upper(trim(line.substr(0, colon))), trim(line.substr(colon + 1))};
}

}  // namespace

Instance parse_tsplib(std::istream& in) {
  Instance instance;
  int dimension = -1;
  bool saw_coords = false;
  std::string line;

  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    auto [key, value] = split_keyword(stripped);

    if (key == "NAME") {
      instance.name = value;
    } else if (key == "DIMENSION") {
      try {
        dimension = std::stoi(value);
      } catch (const std::exception&) {
        throw ParseError("DIMENSION is not an integer: '" + value + "'");
      }
      if (dimension < 1) throw ParseError("DIMENSION must be positive");
    } else if (key == "EDGE_WEIGHT_TYPE") {
      if (upper(value) != "EUC_2D") {
        throw ParseError("unsupported EDGE_WEIGHT_TYPE '" + value + "' (only EUC_2D)");
      }
    } else if (key == "NODE_COORD_SECTION") {
      if (dimension < 1) throw ParseError("NODE_COORD_SECTION before DIMENSION");
      instance.points.assign(static_cast<std::size_t>(dimension), Point{});
      std::vector<bool> filled(static_cast<std::size_t>(dimension), false);
      for (int i = 0; i < dimension; ++i) {
        long long index;
        double x, y;
        if (!(in >> index >> x >> y)) {
          throw ParseError("bad or missing coordinate line " + std::to_string(i + 1) + " of " +
                           std::to_string(dimension));
        }
        if (index < 1 || index > dimension) {
          throw ParseError("node index " + std::to_string(index) + " out of range 1.." +
                           std::to_string(dimension));
        }
        if (!std::isfinite(x) || !std::isfinite(y)) {
          throw ParseError("non-finite coordinate at node " + std::to_string(index));
        }
        auto slot = static_cast<std::size_t>(index - 1);
        if (filled[slot]) throw ParseError("duplicate node index " + std::to_string(index));
        filled[slot] = true;
        instance.points[slot] = Point{x, y};
      }
      std::getline(in, line);  // consume the rest of the last coordinate line
      saw_coords = true;
    } else if (key == "EOF") {
      break;
    }
    // anything else (TYPE, COMMENT, ...) is ignored
  }

  if (dimension < 1) throw ParseError("missing DIMENSION");
  if (!saw_coords) throw ParseError("missing NODE_COORD_SECTION");
  instance.mode = DistanceMode::kEuc2dRounded;
  return instance;
}

Instance parse_tsplib_string(const std::string& text) {
  std::istringstream in(text);
  return parse_tsplib(in);
}

Instance load_tsplib_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse_tsplib(in);
}

void serialize_tsplib(const Instance& instance, std::ostream& out) {
  out << "NAME : " << instance.name << "\n";
  out << "TYPE : TSP\n";
  out << "DIMENSION : " << instance.node_count() << "\n";
  out << "EDGE_WEIGHT_TYPE : EUC_2D\n";
  out << "NODE_COORD_SECTION\n";
  char buf[96];
  for (int i = 0; i < instance.node_count(); ++i) {
    const Point& p = instance.points[static_cast<std::size_t>(i)];
    std::snprintf(buf, sizeof(buf), "%d %.17g %.17g\n", i + 1, p.x, p.y);
    out << buf;
  }
  out << "EOF\n";
}

double distance(const Instance& instance, int i, int j) {
  const int n = instance.node_count();
  if (i < 0 || i >= n || j < 0 || j >= n) {
    throw IndexError("node index out of range: (" + std::to_string(i) + ", " +
                     std::to_string(j) + ") with n=" + std::to_string(n));
  }
  const Point& a = instance.points[static_cast<std::size_t>(i)];
  const Point& b = instance.points[static_cast<std::size_t>(j)];
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double d = std::sqrt(dx * dx + dy * dy);
  if (instance.mode == DistanceMode::kEuc2dRounded) {
    return std::floor(d + 0.5);  // TSPLIB nint
  }
  return d;
}

Instance generate_instance(int n, std::uint64_t seed, double box) {
  if (n < 1) throw ArgumentError("generate_instance: n must be >= 1");
  if (!(box > 0.0)) throw ArgumentError("generate_instance: box must be > 0");
  Instance instance;
  instance.name = "rand" + std::to_string(n) + "-s" + std::to_string(seed);
  instance.mode = DistanceMode::kEuc2dExact;
  instance.points.reserve(static_cast<std::size_t>(n));
  SplitMix64 rng(seed);
  for (int i = 0; i < n; ++i) {
    const double x = rng.next_double() * box;
    const double y = rng.next_double() * box;
    instance.points.push_back(Point{x, y});
  }
  return instance;
}

}  // namespace f2m
