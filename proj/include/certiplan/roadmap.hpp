#pragma once

// Clearance-respecting roadmap graphs over sampled nodes plus robot and
// goal nodes, with shortest-path queries. The parallel builder and the
// serial reference produce identical graphs; both connect nodes strictly
// closer than the connection radius whose straight edge keeps the
// roadmap margin.

#include <cstddef>
#include <vector>

#include "certiplan/geometry.hpp"
#include "certiplan/sampling.hpp"

namespace certiplan {

class InfeasibleNodeError : public std::runtime_error {
 public:
  InfeasibleNodeError(std::string node_name, double clearance, double margin)
      : std::runtime_error("node " + node_name + " has clearance " +
                           std::to_string(clearance) + " below margin " +
                           std::to_string(margin)),
        node_name(std::move(node_name)) {}
  std::string node_name;
};

struct Edge {
  std::size_t neighbor;
  double length;
};

struct Roadmap {
  std::vector<Point> nodes;  // filtered samples, then starts, then goals
  std::vector<std::vector<Edge>> adjacency;
  double margin = 0.0;
  double radius = 0.0;
  std::size_t sample_count = 0;  // samples surviving the margin filter
  std::size_t start_count = 0;
  std::size_t goal_count = 0;

  std::size_t start_index(std::size_t i) const { return sample_count + i; }
  std::size_t goal_index(std::size_t j) const {
    return sample_count + start_count + j;
  }
};

struct PathResult {
  std::vector<Point> waypoints;
  double length = 0.0;
  bool reachable = false;
};

// Build the roadmap; neighbor scans run in parallel over nodes. Starts
// or goals violating the margin raise InfeasibleNodeError.
Roadmap build(const Workspace& ws, const std::vector<Point>& starts,
              const std::vector<Point>& goals, double margin, double radius,
              const SampleSet& samples);

// Brute-force O(n^2) single-threaded reference; must produce a graph
// identical to build().
Roadmap build_serial_reference(const Workspace& ws,
                               const std::vector<Point>& starts,
                               const std::vector<Point>& goals, double margin,
                               double radius, const SampleSet& samples);

// Dijkstra with deterministic tie-breaking by node index. Unreachable
// targets yield reachable=false and length=+infinity.
PathResult shortest_path(const Roadmap& rm, std::size_t start_index,
                         std::size_t goal_index);

// A* with the Euclidean heuristic; returns the same length as Dijkstra.
PathResult shortest_path_astar(const Roadmap& rm, std::size_t start_index,
                               std::size_t goal_index);

// Uniform spatial hash used for near-neighbor scans; exposed for the
// oracle test against brute-force neighbor sets.
std::vector<std::size_t> near_indices(const std::vector<Point>& nodes,
                                      std::size_t query, double radius);

}  // namespace certiplan
