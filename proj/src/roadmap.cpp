#include "certiplan/roadmap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace certiplan {

namespace {

// Uniform grid over the node bounding box with cell size = radius, so a
// 3x3 cell neighborhood covers every candidate within the radius.
class SpatialHash {
 public:
  SpatialHash(const std::vector<Point>& nodes, double radius)
      : nodes_(nodes), cell_(radius) {
    if (nodes.empty()) return;
    min_ = nodes[0];
    Point mx = nodes[0];
    for (Point p : nodes) {
      min_.x = std::min(min_.x, p.x);
      min_.y = std::min(min_.y, p.y);
      mx.x = std::max(mx.x, p.x);
      mx.y = std::max(mx.y, p.y);
    }
    nx_ = static_cast<long>((mx.x - min_.x) / cell_) + 1;
    ny_ = static_cast<long>((mx.y - min_.y) / cell_) + 1;
    cells_.resize(static_cast<std::size_t>(nx_ * ny_));
    for (std::size_t i = 0; i < nodes.size(); ++i)
      cells_[cell_index(nodes[i])].push_back(i);
  }

  // Indices (sorted) of nodes strictly within radius of nodes[query],
  // excluding query itself.
  std::vector<std::size_t> near(std::size_t query) const {
    Point p = nodes_[query];
    long ci = coord_x(p), cj = coord_y(p);
    std::vector<std::size_t> out;
    for (long dj = -1; dj <= 1; ++dj) {
      for (long di = -1; di <= 1; ++di) {
        long ii = ci + di, jj = cj + dj;
        if (ii < 0 || jj < 0 || ii >= nx_ || jj >= ny_) continue;
        for (std::size_t idx : cells_[static_cast<std::size_t>(jj * nx_ + ii)]) {
          if (idx == query) continue;
          if (distance(nodes_[idx], p) < cell_) out.push_back(idx);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  long coord_x(Point p) const {
    return std::min<long>(nx_ - 1, static_cast<long>((p.x - min_.x) / cell_));
  }
  long coord_y(Point p) const {
    return std::min<long>(ny_ - 1, static_cast<long>((p.y - min_.y) / cell_));
  }
  std::size_t cell_index(Point p) const {
    return static_cast<std::size_t>(coord_y(p) * nx_ + coord_x(p));
  }

  const std::vector<Point>& nodes_;
  double cell_;
  Point min_{};
  long nx_ = 0, ny_ = 0;
  std::vector<std::vector<std::size_t>> cells_;
};

std::vector<Point> assemble_nodes(const Workspace& ws,
                                  const std::vector<Point>& starts,
                                  const std::vector<Point>& goals,
                                  double margin, const SampleSet& samples,
                                  std::size_t* sample_count) {
  for (std::size_t i = 0; i < starts.size(); ++i) {
    double c = point_obstacle_distance(ws, starts[i]);
    if (c < margin)
      throw InfeasibleNodeError("robot " + std::to_string(i), c, margin);
  }
  for (std::size_t j = 0; j < goals.size(); ++j) {
    double c = point_obstacle_distance(ws, goals[j]);
    if (c < margin)
      throw InfeasibleNodeError("goal " + std::to_string(j), c, margin);
  }
  std::vector<Point> nodes;
  nodes.reserve(samples.points.size() + starts.size() + goals.size());
  for (Point p : samples.points) {
    if (in_delta_interior(ws, p, margin)) nodes.push_back(p);
  }
  *sample_count = nodes.size();
  nodes.insert(nodes.end(), starts.begin(), starts.end());
  nodes.insert(nodes.end(), goals.begin(), goals.end());
  return nodes;
}

}  // namespace

std::vector<std::size_t> near_indices(const std::vector<Point>& nodes,
                                      std::size_t query, double radius) {
  SpatialHash hash(nodes, radius);
  return hash.near(query);
}

Roadmap build(const Workspace& ws, const std::vector<Point>& starts,
              const std::vector<Point>& goals, double margin, double radius,
              const SampleSet& samples) {
  if (!(radius > 0.0)) throw std::domain_error("connection radius must be positive");
  Roadmap rm;
  rm.margin = margin;
  rm.radius = radius;
  rm.nodes = assemble_nodes(ws, starts, goals, margin, samples, &rm.sample_count);
  rm.start_count = starts.size();
  rm.goal_count = goals.size();
  rm.adjacency.resize(rm.nodes.size());

  SpatialHash hash(rm.nodes, radius);
  const long n = static_cast<long>(rm.nodes.size());
#pragma omp parallel for schedule(dynamic, 16)
  for (long vi = 0; vi < n; ++vi) {
    auto v = static_cast<std::size_t>(vi);
    for (std::size_t u : hash.near(v)) {
      if (uninterrupted_edge(ws, rm.nodes[v], rm.nodes[u], margin))
        rm.adjacency[v].push_back({u, distance(rm.nodes[v], rm.nodes[u])});
    }
  }
  return rm;
}

Roadmap build_serial_reference(const Workspace& ws,
                               const std::vector<Point>& starts,
                               const std::vector<Point>& goals, double margin,
                               double radius, const SampleSet& samples) {
  if (!(radius > 0.0)) throw std::domain_error("connection radius must be positive");
  Roadmap rm;
  rm.margin = margin;
  rm.radius = radius;
  rm.nodes = assemble_nodes(ws, starts, goals, margin, samples, &rm.sample_count);
  rm.start_count = starts.size();
  rm.goal_count = goals.size();
  rm.adjacency.resize(rm.nodes.size());
  for (std::size_t v = 0; v < rm.nodes.size(); ++v) {
    for (std::size_t u = 0; u < rm.nodes.size(); ++u) {
      if (u == v) continue;
      double d = distance(rm.nodes[v], rm.nodes[u]);
      if (d < radius && uninterrupted_edge(ws, rm.nodes[v], rm.nodes[u], margin))
        rm.adjacency[v].push_back({u, d});
    }
  }
  return rm;
}

namespace {

PathResult run_search(const Roadmap& rm, std::size_t start, std::size_t goal,
                      bool use_heuristic) {
  const std::size_t n = rm.nodes.size();
  if (start >= n || goal >= n) throw std::domain_error("node index out of range");
  constexpr double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, inf);
  std::vector<std::size_t> prev(n, n);
  std::vector<bool> done(n, false);

  auto h = [&](std::size_t v) {
    return use_heuristic ? distance(rm.nodes[v], rm.nodes[goal]) : 0.0;
  };
  using Entry = std::pair<double, std::size_t>;  // (priority, node)
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> pq;
  dist[start] = 0.0;
  pq.push({h(start), start});
  while (!pq.empty()) {
    auto [prio, v] = pq.top();
    pq.pop();
    if (done[v]) continue;
    done[v] = true;
    if (v == goal) break;
    for (const Edge& e : rm.adjacency[v]) {
      double cand = dist[v] + e.length;
      if (cand < dist[e.neighbor] ||
          (cand == dist[e.neighbor] && v < prev[e.neighbor])) {
        dist[e.neighbor] = cand;
        prev[e.neighbor] = v;
        pq.push({cand + h(e.neighbor), e.neighbor});
      }
    }
  }

  PathResult out;
  if (dist[goal] == inf) {
    out.length = inf;
    return out;
  }
  out.reachable = true;
  out.length = dist[goal];
  std::vector<Point> rev;
  for (std::size_t v = goal;; v = prev[v]) {
    rev.push_back(rm.nodes[v]);
    if (v == start) break;
  }
  out.waypoints.assign(rev.rbegin(), rev.rend());
  return out;
}

}  // namespace

PathResult shortest_path(const Roadmap& rm, std::size_t start_index,
                         std::size_t goal_index) {
  return run_search(rm, start_index, goal_index, false);
}

PathResult shortest_path_astar(const Roadmap& rm, std::size_t start_index,
                               std::size_t goal_index) {
  return run_search(rm, start_index, goal_index, true);
}

}  // namespace certiplan
