#pragma once

// Exact planar clearance queries against a set of polygonal obstacles.
// Distances are computed with closed-form point-segment and
// segment-segment primitives in double precision; comparisons against
// clearance margins use plain >= with no tolerance inflation.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace certiplan {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }

class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

// Simple polygon, stored counter-clockwise. Construction rejects
// degenerate input: fewer than 3 vertices, repeated consecutive
// vertices, collinear triples, or self-intersection. Clockwise input
// is reversed to canonical orientation.
class Polygon {
 public:
  explicit Polygon(std::vector<Point> vertices);

  const std::vector<Point>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  // Inclusive of the boundary.
  bool contains(Point p) const;
  double boundary_distance(Point p) const;

 private:
  std::vector<Point> vertices_;
};

struct Workspace {
  Point bbox_min;
  Point bbox_max;
  std::vector<Polygon> obstacles;
  bool boundary_is_obstacle = false;

  Workspace(Point mn, Point mx, std::vector<Polygon> obs = {},
            bool boundary_obstacle = false);

  double width() const { return bbox_max.x - bbox_min.x; }
  double height() const { return bbox_max.y - bbox_min.y; }
  bool inside_bbox(Point p) const {
    return p.x >= bbox_min.x && p.x <= bbox_max.x && p.y >= bbox_min.y &&
           p.y <= bbox_max.y;
  }
};

// Distance from a point to the closest segment endpoint projection.
double point_segment_distance(Point p, Point a, Point b);
// Zero when the segments touch or cross.
double segment_segment_distance(Point p1, Point p2, Point q1, Point q2);

// 0 when p lies in a closed obstacle; otherwise the minimum distance to
// the union of obstacle boundaries (and the bbox boundary when
// boundary_is_obstacle). Throws GeometryError when p is outside the bbox.
double point_obstacle_distance(const Workspace& ws, Point p);

// True iff p is inside the bbox and at distance >= delta from the
// obstacle set (inclusive, per the margin definition).
bool in_delta_interior(const Workspace& ws, Point p, double delta);

// Minimum over the segment [a,b] of point_obstacle_distance; 0 when the
// segment meets any obstacle. Symmetric in (a,b) by construction.
double segment_clearance(const Workspace& ws, Point a, Point b);

// True iff the straight edge a-b stays at clearance >= delta.
bool uninterrupted_edge(const Workspace& ws, Point a, Point b, double delta);

}  // namespace certiplan
