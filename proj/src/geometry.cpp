#include "certiplan/geometry.hpp"

#include <algorithm>
#include <limits>

namespace certiplan {

namespace {

// Strict segment intersection test covering touching endpoints; returns
// true when the closed segments share at least one point.
bool segments_intersect(Point p1, Point p2, Point q1, Point q2) {
  auto orient = [](Point a, Point b, Point c) {
    double v = cross(b - a, c - a);
    return (v > 0.0) - (v < 0.0);
  };
  auto on_segment = [](Point a, Point b, Point c) {
    return std::min(a.x, b.x) <= c.x && c.x <= std::max(a.x, b.x) &&
           std::min(a.y, b.y) <= c.y && c.y <= std::max(a.y, b.y);
  };
  int o1 = orient(p1, p2, q1);
  int o2 = orient(p1, p2, q2);
  int o3 = orient(q1, q2, p1);
  int o4 = orient(q1, q2, p2);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(p1, p2, q1)) return true;
  if (o2 == 0 && on_segment(p1, p2, q2)) return true;
  if (o3 == 0 && on_segment(q1, q2, p1)) return true;
  if (o4 == 0 && on_segment(q1, q2, p2)) return true;
  return false;
}

double signed_area(const std::vector<Point>& v) {
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::size_t j = (i + 1) % v.size();
    a += cross(v[i], v[j]);
  }
  return 0.5 * a;
}

}  // namespace

double point_segment_distance(Point p, Point a, Point b) {
  Point d = b - a;
  double len2 = dot(d, d);
  if (len2 == 0.0) return distance(p, a);
  double t = dot(p - a, d) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * d);
}

double segment_segment_distance(Point p1, Point p2, Point q1, Point q2) {
  if (segments_intersect(p1, p2, q1, q2)) return 0.0;
  return std::min(std::min(point_segment_distance(q1, p1, p2),
                           point_segment_distance(q2, p1, p2)),
                  std::min(point_segment_distance(p1, q1, q2),
                           point_segment_distance(p2, q1, q2)));
}

Polygon::Polygon(std::vector<Point> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    Point a = vertices_[i];
    Point b = vertices_[(i + 1) % n];
    if (a.x == b.x && a.y == b.y)
      throw GeometryError("polygon has repeated consecutive vertices");
    if (!std::isfinite(a.x) || !std::isfinite(a.y))
      throw GeometryError("polygon vertex is not finite");
  }
  for (std::size_t i = 0; i < n; ++i) {
    Point a = vertices_[i];
    Point b = vertices_[(i + 1) % n];
    Point c = vertices_[(i + 2) % n];
    if (cross(b - a, c - a) == 0.0)
      throw GeometryError("polygon has collinear vertex triple");
  }
  // Simplicity: non-adjacent edges must not meet.
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1 || (i == 0 && j == n - 1)) continue;
      if (segments_intersect(vertices_[i], vertices_[(i + 1) % n],
                             vertices_[j], vertices_[(j + 1) % n]))
        throw GeometryError("polygon is self-intersecting");
    }
  }
  if (signed_area(vertices_) < 0.0)
    std::reverse(vertices_.begin(), vertices_.end());
}

bool Polygon::contains(Point p) const {
  const std::size_t n = vertices_.size();
  // Boundary counts as inside (closed obstacle).
  for (std::size_t i = 0; i < n; ++i) {
    if (point_segment_distance(p, vertices_[i], vertices_[(i + 1) % n]) == 0.0)
      return true;
  }
  bool in = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    Point a = vertices_[i];
    Point b = vertices_[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      double xcross = a.x + (p.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (p.x < xcross) in = !in;
    }
  }
  return in;
}

double Polygon::boundary_distance(Point p) const {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best,
                    point_segment_distance(p, vertices_[i], vertices_[(i + 1) % n]));
  }
  return best;
}

Workspace::Workspace(Point mn, Point mx, std::vector<Polygon> obs,
                     bool boundary_obstacle)
    : bbox_min(mn), bbox_max(mx), obstacles(std::move(obs)),
      boundary_is_obstacle(boundary_obstacle) {
  if (!(bbox_min.x < bbox_max.x) || !(bbox_min.y < bbox_max.y))
    throw GeometryError("workspace bbox is empty");
  for (const auto& poly : obstacles) {
    for (Point v : poly.vertices()) {
      if (!inside_bbox(v))
        throw GeometryError("obstacle vertex outside workspace bbox");
    }
  }
}

double point_obstacle_distance(const Workspace& ws, Point p) {
  if (!ws.inside_bbox(p))
    throw GeometryError("query point outside workspace bbox");
  double best = std::numeric_limits<double>::infinity();
  for (const auto& poly : ws.obstacles) {
    if (poly.contains(p)) return 0.0;
    best = std::min(best, poly.boundary_distance(p));
  }
  if (ws.boundary_is_obstacle) {
    double bd = std::min(std::min(p.x - ws.bbox_min.x, ws.bbox_max.x - p.x),
                         std::min(p.y - ws.bbox_min.y, ws.bbox_max.y - p.y));
    best = std::min(best, bd);
  }
  return best;
}

bool in_delta_interior(const Workspace& ws, Point p, double delta) {
  if (delta < 0.0) throw GeometryError("delta must be nonnegative");
  if (!ws.inside_bbox(p)) return false;
  return point_obstacle_distance(ws, p) >= delta;
}

double segment_clearance(const Workspace& ws, Point a, Point b) {
  if (!ws.inside_bbox(a) || !ws.inside_bbox(b))
    throw GeometryError("segment endpoint outside workspace bbox");
  // Canonical endpoint order keeps the result bit-identical under swap.
  if (b.x < a.x || (b.x == a.x && b.y < a.y)) std::swap(a, b);
  if (a.x == b.x && a.y == b.y) return point_obstacle_distance(ws, a);
  double best = std::numeric_limits<double>::infinity();
  for (const auto& poly : ws.obstacles) {
    if (poly.contains(a) || poly.contains(b)) return 0.0;
    const auto& v = poly.vertices();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      double d = segment_segment_distance(a, b, v[i], v[(i + 1) % n]);
      if (d == 0.0) return 0.0;
      best = std::min(best, d);
    }
  }
  if (ws.boundary_is_obstacle) {
    const Point c1 = ws.bbox_min;
    const Point c2{ws.bbox_max.x, ws.bbox_min.y};
    const Point c3 = ws.bbox_max;
    const Point c4{ws.bbox_min.x, ws.bbox_max.y};
    const Point box[5] = {c1, c2, c3, c4, c1};
    for (int i = 0; i < 4; ++i)
      best = std::min(best, segment_segment_distance(a, b, box[i], box[i + 1]));
  }
  return best;
}

bool uninterrupted_edge(const Workspace& ws, Point a, Point b, double delta) {
  // Zero clearance means the segment touches an obstacle: never usable,
  // not even at delta = 0.
  double c = segment_clearance(ws, a, b);
  return c > 0.0 && c >= delta;
}

}  // namespace certiplan
