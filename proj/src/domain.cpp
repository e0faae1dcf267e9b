#include "pprc/domain.hpp"

#include "pprc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pprc {
namespace {

double signed_area(std::span<const Vec2> poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    a += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * a;
}

double segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  double s = len2 > 0.0 ? dot(p - a, ab) / len2 : 0.0;
  s = std::clamp(s, 0.0, 1.0);
  return norm(p - (a + s * ab));
}

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  const double d1 = cross(b - a, c - a);
  const double d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c);
  const double d4 = cross(d - c, b - c);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  auto on_segment = [](Vec2 p, Vec2 q, Vec2 r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  return (d1 == 0 && on_segment(a, b, c)) || (d2 == 0 && on_segment(a, b, d)) ||
         (d3 == 0 && on_segment(c, d, a)) || (d4 == 0 && on_segment(c, d, b));
}

// Even-odd rule; boundary points are reported inconsistently, callers that
// care use distance_to_boundary as well.
bool polygon_contains(std::span<const Vec2> poly, Vec2 p) {
  bool inside = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Vec2 a = poly[i];
    const Vec2 b = poly[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
      if (p.x < x)
        inside = !inside;
    }
  }
  return inside;
}

constexpr double kBoundaryEps = 1e-12;

} // namespace

ImageDomain ImageDomain::rectangle(Vec2 min, Vec2 max) {
  if (!(max.x > min.x && max.y > min.y))
    throw ConfigurationError("rectangle domain needs max > min in both coordinates");
  ImageDomain d;
  d.kind_ = Kind::rectangle;
  d.vertices_ = {min, {max.x, min.y}, max, {min.x, max.y}};
  return d;
}

ImageDomain ImageDomain::disc(Vec2 center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw ConfigurationError("disc domain needs a positive finite radius");
  ImageDomain d;
  d.kind_ = Kind::disc;
  d.center_ = center;
  d.radius_ = radius;
  return d;
}

ImageDomain ImageDomain::polygon(std::vector<Vec2> vertices) {
  if (vertices.size() >= 2 && vertices.front() == vertices.back())
    vertices.pop_back();
  if (vertices.size() < 3)
    throw ConfigurationError("polygon domain needs at least three vertices");
  const double a = signed_area(vertices);
  if (!(std::abs(a) > 0.0))
    throw ConfigurationError("polygon domain has zero area");
  if (a < 0.0)
    std::reverse(vertices.begin(), vertices.end());
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // adjacent edges share a vertex
      if (j == i + 1 || (i == 0 && j == n - 1))
        continue;
      if (segments_intersect(vertices[i], vertices[(i + 1) % n], vertices[j],
                             vertices[(j + 1) % n]))
        throw ConfigurationError("polygon domain is self-intersecting");
    }
  }
  ImageDomain d;
  d.kind_ = Kind::polygon;
  d.vertices_ = std::move(vertices);
  return d;
}

bool ImageDomain::contains(Vec2 x) const {
  if (kind_ == Kind::disc)
    return norm(x - center_) < radius_;
  return polygon_contains(vertices_, x) && distance_to_boundary(x) > kBoundaryEps;
}

bool ImageDomain::contains_closed(Vec2 x, double slack) const {
  if (kind_ == Kind::disc)
    return norm(x - center_) <= radius_ + slack;
  return polygon_contains(vertices_, x) || distance_to_boundary(x) <= slack + kBoundaryEps;
}

double ImageDomain::distance_to_boundary(Vec2 x) const {
  if (kind_ == Kind::disc)
    return std::abs(norm(x - center_) - radius_);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    best = std::min(best, segment_distance(x, vertices_[i], vertices_[(i + 1) % vertices_.size()]));
  return best;
}

double ImageDomain::farthest_distance(Vec2 x) const {
  if (kind_ == Kind::disc)
    return norm(x - center_) + radius_;
  double best = 0.0;
  for (Vec2 v : vertices_)
    best = std::max(best, norm(x - v));
  return best;
}

Vec2 ImageDomain::bbox_min() const {
  if (kind_ == Kind::disc)
    return {center_.x - radius_, center_.y - radius_};
  Vec2 m = vertices_.front();
  for (Vec2 v : vertices_)
    m = {std::min(m.x, v.x), std::min(m.y, v.y)};
  return m;
}

Vec2 ImageDomain::bbox_max() const {
  if (kind_ == Kind::disc)
    return {center_.x + radius_, center_.y + radius_};
  Vec2 m = vertices_.front();
  for (Vec2 v : vertices_)
    m = {std::max(m.x, v.x), std::max(m.y, v.y)};
  return m;
}

Vec2 ImageDomain::centroid() const {
  if (kind_ == Kind::disc)
    return center_;
  const double a = signed_area(vertices_);
  Vec2 c{};
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    const Vec2 p = vertices_[i];
    const Vec2 q = vertices_[(i + 1) % vertices_.size()];
    c += cross(p, q) * (p + q);
  }
  return (1.0 / (6.0 * a)) * c;
}

double ImageDomain::area() const {
  if (kind_ == Kind::disc)
    return kPi * radius_ * radius_;
  return signed_area(vertices_);
}

double ImageDomain::diameter() const {
  if (kind_ == Kind::disc)
    return 2.0 * radius_;
  double best = 0.0;
  for (Vec2 a : vertices_)
    for (Vec2 b : vertices_)
      best = std::max(best, norm(a - b));
  return best;
}

std::vector<Vec2> ImageDomain::boundary_samples(int count) const {
  std::vector<Vec2> out;
  if (count <= 0)
    return out;
  out.reserve(count + vertices_.size());
  if (kind_ == Kind::disc) {
    for (int i = 0; i < count; ++i)
      out.push_back(center_ + radius_ * direction(kTwoPi * i / count));
    return out;
  }
  const std::size_t n = vertices_.size();
  double perimeter = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    perimeter += norm(vertices_[(i + 1) % n] - vertices_[i]);
  const double step = perimeter / count;
  std::size_t edge = 0;
  double edge_start = 0.0;
  for (int k = 0; k < count; ++k) {
    const double s = k * step;
    double len = norm(vertices_[(edge + 1) % n] - vertices_[edge]);
    while (s > edge_start + len && edge + 1 < n) {
      edge_start += len;
      ++edge;
      len = norm(vertices_[(edge + 1) % n] - vertices_[edge]);
    }
    const double u = len > 0.0 ? std::clamp((s - edge_start) / len, 0.0, 1.0) : 0.0;
    out.push_back(vertices_[edge] + u * (vertices_[(edge + 1) % n] - vertices_[edge]));
  }
  out.insert(out.end(), vertices_.begin(), vertices_.end());
  return out;
}

std::vector<std::pair<double, double>> ImageDomain::chord(Vec2 origin, Vec2 dir,
                                                          double t_min) const {
  std::vector<std::pair<double, double>> out;
  if (kind_ == Kind::disc) {
    const Vec2 oc = origin - center_;
    const double b = dot(dir, oc);
    const double c = dot(oc, oc) - radius_ * radius_;
    const double disc = b * b - c;
    if (disc <= 0.0)
      return out;
    const double root = std::sqrt(disc);
    const double t0 = std::max(-b - root, t_min);
    const double t1 = -b + root;
    if (t1 > t0)
      out.emplace_back(t0, t1);
    return out;
  }
  std::vector<double> ts;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = vertices_[i];
    const Vec2 e = vertices_[(i + 1) % n] - a;
    const double denom = cross(dir, e);
    if (denom == 0.0)
      continue;
    const Vec2 ao = a - origin;
    const double t = cross(ao, e) / denom;
    const double s = cross(ao, dir) / denom;
    if (s >= 0.0 && s <= 1.0)
      ts.push_back(t);
  }
  ts.push_back(t_min);
  std::sort(ts.begin(), ts.end());
  for (std::size_t i = 0; i + 1 < ts.size(); ++i) {
    const double t0 = std::max(ts[i], t_min);
    const double t1 = ts[i + 1];
    if (t1 <= t0)
      continue;
    if (polygon_contains(vertices_, origin + (0.5 * (t0 + t1)) * dir)) {
      if (!out.empty() && out.back().second >= t0)
        out.back().second = t1;
      else
        out.emplace_back(t0, t1);
    }
  }
  return out;
}

double ImageDomain::chord_length(Vec2 origin, Vec2 dir, double t_min) const {
  double len = 0.0;
  for (auto [a, b] : chord(origin, dir, t_min))
    len += b - a;
  return len;
}

Interval ImageDomain::offset_range(double theta) const {
  const Vec2 u = direction(theta);
  if (kind_ == Kind::disc) {
    const double c = dot(center_, u);
    return {c - radius_, c + radius_};
  }
  Interval r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (Vec2 v : vertices_) {
    r.lo = std::min(r.lo, dot(v, u));
    r.hi = std::max(r.hi, dot(v, u));
  }
  return r;
}

Interval ImageDomain::angular_range(Vec2 vertex, double theta0) const {
  if (kind_ == Kind::disc) {
    const Vec2 d = center_ - vertex;
    const double dist = norm(d);
    const double mid = lift_angle(std::atan2(d.y, d.x), theta0);
    const double half = std::asin(std::min(1.0, radius_ / dist));
    return {mid - half, mid + half};
  }
  Interval r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (Vec2 v : vertices_) {
    const Vec2 d = v - vertex;
    const double a = lift_angle(std::atan2(d.y, d.x), theta0);
    r.lo = std::min(r.lo, a);
    r.hi = std::max(r.hi, a);
  }
  return r;
}

std::vector<Vec2> clip_half_plane(std::span<const Vec2> polygon, Vec2 normal, double offset) {
  std::vector<Vec2> out;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 a = polygon[i];
    const Vec2 b = polygon[(i + 1) % n];
    const double fa = dot(normal, a) - offset;
    const double fb = dot(normal, b) - offset;
    if (fa < 0.0)
      out.push_back(a);
    if ((fa < 0.0) != (fb < 0.0)) {
      const double s = fa / (fa - fb);
      out.push_back(a + s * (b - a));
    }
  }
  return out;
}

std::string to_string(ImageDomain::Kind kind) {
  switch (kind) {
  case ImageDomain::Kind::rectangle:
    return "rectangle";
  case ImageDomain::Kind::disc:
    return "disc";
  case ImageDomain::Kind::polygon:
    return "polygon";
  }
  return "unknown";
}

} // namespace pprc
