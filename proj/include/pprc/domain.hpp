#pragma once

#include "pprc/vec.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace pprc {

/// Open, bounded, connected image domain: an axis-aligned rectangle, a disc or
/// a simple polygon.
class ImageDomain {
public:
  enum class Kind { rectangle, disc, polygon };

  static ImageDomain rectangle(Vec2 min, Vec2 max);
  static ImageDomain disc(Vec2 center, double radius);
  /// Throws ConfigurationError unless the vertex list forms a simple polygon
  /// of positive area. Orientation is normalized to counterclockwise.
  static ImageDomain polygon(std::vector<Vec2> vertices);

  Kind kind() const { return kind_; }
  /// Polygon (and rectangle) vertices in counterclockwise order; empty for a disc.
  std::span<const Vec2> vertices() const { return vertices_; }
  Vec2 center() const { return center_; }
  double radius() const { return radius_; }

  /// Strict interior membership.
  bool contains(Vec2 x) const;
  /// Membership in the closure, up to an absolute slack in cm.
  bool contains_closed(Vec2 x, double slack = 0.0) const;
  /// Euclidean distance from x to the boundary curve.
  double distance_to_boundary(Vec2 x) const;
  /// Distance from an exterior point to the closed domain (0 inside).
  double distance(Vec2 x) const { return contains(x) ? 0.0 : distance_to_boundary(x); }
  /// Largest distance from x to a point of the closed domain.
  double farthest_distance(Vec2 x) const;

  Vec2 bbox_min() const;
  Vec2 bbox_max() const;
  Vec2 centroid() const;
  double area() const;
  double diameter() const;

  /// `count` points equally spaced by arc length along the boundary, followed
  /// by the polygon vertices.
  std::vector<Vec2> boundary_samples(int count) const;

  /// Parameter intervals [t0, t1] (t >= t_min) where origin + t * dir lies in
  /// the domain. `dir` must be a unit vector.
  std::vector<std::pair<double, double>> chord(Vec2 origin, Vec2 dir, double t_min) const;
  /// Total length of the chord intervals.
  double chord_length(Vec2 origin, Vec2 dir, double t_min) const;

  /// Range of x . direction(theta) over the closed domain.
  Interval offset_range(double theta) const;
  /// Range of the lifted angle of x - vertex over the closed domain, with the
  /// branch [theta0, theta0 + 2 pi). The vertex must lie outside the closure.
  Interval angular_range(Vec2 vertex, double theta0) const;

private:
  Kind kind_ = Kind::polygon;
  std::vector<Vec2> vertices_;
  Vec2 center_{};
  double radius_ = 0.0;
};

/// Sutherland-Hodgman clip of a convex or simple polygon against the half
/// plane {x : dot(normal, x) < offset}.
std::vector<Vec2> clip_half_plane(std::span<const Vec2> polygon, Vec2 normal, double offset);

std::string to_string(ImageDomain::Kind kind);

} // namespace pprc
