#include "pprc/geometry.hpp"

#include "pprc/errors.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pprc {

Vec2 par_point(const ParGeometry &g, double r, double t) {
  return r * direction(g.theta) + t * normal(g.theta);
}

RayCoords par_inverse(const ParGeometry &g, Vec2 x) {
  return {dot(x, direction(g.theta)), dot(x, normal(g.theta))};
}

Vec2 fan_point(const FanGeometry &g, double r, double t) {
  if (!(t > 0.0))
    throw DomainError(fmt::format("fan_point: arc parameter must be positive, got {}", t));
  return g.vertex + t * direction(r);
}

RayCoords fan_inverse(const FanGeometry &g, Vec2 x) {
  const Vec2 d = x - g.vertex;
  const double t = norm(d);
  if (t < 1e-14)
    throw SingularPointError("fan_inverse: point coincides with the fan vertex");
  return {lift_angle(std::atan2(d.y, d.x), g.theta0), t};
}

double fan_jacobian_inv(const FanGeometry &g, Vec2 x) {
  const double t = norm(x - g.vertex);
  if (t < 1e-14)
    throw SingularPointError("fan_jacobian_inv: point coincides with the fan vertex");
  return 1.0 / t;
}

RayCoords fanfan_tau(double r1, double r2, Vec2 lambda1, Vec2 lambda2) {
  const Vec2 dl = lambda2 - lambda1;
  const Vec2 n1 = normal(r1);
  const double den = dot(n1, direction(r2));
  if (std::abs(den) < kParallelThreshold)
    throw ParallelRaysError(fmt::format("fan rays r1={} and r2={} are parallel", r1, r2));
  return {-dot(normal(r2), dl) / den, -dot(n1, dl) / den};
}

Vec2 fanfan_X(double r1, double r2, Vec2 lambda1, Vec2 lambda2) {
  const double den = dot(normal(r1), direction(r2));
  if (std::abs(den) < kParallelThreshold)
    throw ParallelRaysError(fmt::format("fan rays r1={} and r2={} are parallel", r1, r2));
  return lambda1 - (dot(normal(r2), lambda2 - lambda1) / den) * direction(r1);
}

Vec2 parfan_X(double theta, double r1, double r2, Vec2 lambda) {
  const Vec2 u = direction(theta);
  const double den = dot(u, direction(r2));
  if (std::abs(den) < kParallelThreshold)
    throw ParallelRaysError(
        fmt::format("fan ray r2={} is parallel to the lines of direction theta={}", r2, theta));
  return lambda + ((r1 - dot(lambda, u)) / den) * direction(r2);
}

bool is_fan(const ViewGeometry &g) { return std::holds_alternative<FanGeometry>(g); }

double attenuation(const ViewGeometry &g) {
  if (const auto *f = std::get_if<FanGeometry>(&g))
    return f->mu;
  return 0.0;
}

Vec2 point(const ViewGeometry &g, double r, double t) {
  return std::visit(
      [&](const auto &v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ParGeometry>)
          return par_point(v, r, t);
        else
          return fan_point(v, r, t);
      },
      g);
}

RayCoords inverse(const ViewGeometry &g, Vec2 x) {
  if (const auto *f = std::get_if<FanGeometry>(&g))
    return fan_inverse(*f, x);
  return par_inverse(std::get<ParGeometry>(g), x);
}

double jacobian_inv(const ViewGeometry &g, Vec2 x) {
  if (const auto *f = std::get_if<FanGeometry>(&g))
    return fan_jacobian_inv(*f, x);
  return 1.0;
}

double weight(const ViewGeometry &g, double t) {
  const double mu = attenuation(g);
  return mu == 0.0 ? 1.0 : std::exp(mu * t);
}

std::string describe(const ViewGeometry &g) {
  if (const auto *f = std::get_if<FanGeometry>(&g))
    return fmt::format("fan(vertex=({}, {}), theta0={}, mu={})", f->vertex.x, f->vertex.y,
                       f->theta0, f->mu);
  return fmt::format("par(theta={})", std::get<ParGeometry>(g).theta);
}

std::string to_string(PairKind kind) {
  switch (kind) {
  case PairKind::par_par:
    return "par-par";
  case PairKind::par_fan:
    return "par-fan";
  case PairKind::fan_par:
    return "fan-par";
  case PairKind::fan_fan:
    return "fan-fan";
  }
  return "unknown";
}

PairKind PairGeometry::kind() const {
  const bool a = is_fan(first);
  const bool b = is_fan(second);
  if (a && b)
    return PairKind::fan_fan;
  if (a)
    return PairKind::fan_par;
  if (b)
    return PairKind::par_fan;
  return PairKind::par_par;
}

Vec2 PairGeometry::intersection(double r1, double r2) const {
  switch (kind()) {
  case PairKind::fan_fan:
    return fanfan_X(r1, r2, std::get<FanGeometry>(first).vertex,
                    std::get<FanGeometry>(second).vertex);
  case PairKind::par_fan:
    return parfan_X(std::get<ParGeometry>(first).theta, r1, r2,
                    std::get<FanGeometry>(second).vertex);
  case PairKind::fan_par:
    return parfan_X(std::get<ParGeometry>(second).theta, r2, r1,
                    std::get<FanGeometry>(first).vertex);
  case PairKind::par_par: {
    const double t1 = std::get<ParGeometry>(first).theta;
    const double t2 = std::get<ParGeometry>(second).theta;
    const double det = std::sin(t2 - t1);
    if (std::abs(det) < kParallelThreshold)
      throw ParallelRaysError("parallel views share their line direction");
    const Vec2 u1 = direction(t1);
    const Vec2 u2 = direction(t2);
    return {(r1 * u2.y - r2 * u1.y) / det, (r2 * u1.x - r1 * u2.x) / det};
  }
  }
  return {};
}

int fan_orientation(Vec2 lambda1, Vec2 lambda2, const ImageDomain &domain) {
  return cross(domain.centroid() - lambda1, lambda2 - lambda1) > 0.0 ? 1 : -1;
}

double default_theta0(Vec2 lambda1, Vec2 lambda2, int orientation) {
  const Vec2 p = (orientation >= 0 ? 1.0 : -1.0) * perp(lambda2 - lambda1);
  return lift_angle(std::atan2(p.y, p.x), 0.0);
}

PairGeometry make_fan_pair(Vec2 lambda1, Vec2 lambda2, double mu, ImageDomain domain) {
  const double theta0 = default_theta0(lambda1, lambda2, fan_orientation(lambda1, lambda2, domain));
  return {FanGeometry{lambda1, theta0, mu}, FanGeometry{lambda2, theta0, mu}, std::move(domain)};
}

namespace {

// Checks that the vertex is outside the closure and the branch cut misses the domain.
void check_fan_view(const FanGeometry &g, const ImageDomain &dom, AdmissibilityReport &rep,
                    const char *name) {
  const double dist = dom.contains_closed(g.vertex) ? 0.0 : dom.distance_to_boundary(g.vertex);
  rep.vertex_distance = std::min(rep.vertex_distance, dist);
  if (!(dist > rep.threshold)) {
    rep.failures.push_back(fmt::format("{} fan vertex lies in the closed domain", name));
    return;
  }
  if (!dom.chord(g.vertex, direction(g.theta0), 0.0).empty())
    rep.failures.push_back(fmt::format("{} fan branch cut theta0={} crosses the domain", name,
                                       g.theta0));
}

} // namespace

AdmissibilityReport check_pair_admissible(const PairGeometry &pg, int boundary_samples,
                                          double threshold) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  AdmissibilityReport rep;
  rep.kind = pg.kind();
  rep.threshold = threshold;
  rep.vertex_distance = inf;
  const auto samples = pg.domain.boundary_samples(boundary_samples);
  double margin = inf;

  switch (rep.kind) {
  case PairKind::par_par: {
    const double a = std::get<ParGeometry>(pg.first).theta;
    const double b = std::get<ParGeometry>(pg.second).theta;
    rep.angle_separation = std::abs(std::sin(a - b));
    margin = rep.angle_separation;
    if (!(rep.angle_separation > threshold))
      rep.failures.push_back("parallel views coincide modulo pi");
    break;
  }
  case PairKind::par_fan:
  case PairKind::fan_par: {
    const bool par_first = rep.kind == PairKind::par_fan;
    const auto &par = std::get<ParGeometry>(par_first ? pg.first : pg.second);
    const auto &fan = std::get<FanGeometry>(par_first ? pg.second : pg.first);
    check_fan_view(fan, pg.domain, rep, "the");
    if (rep.failures.empty()) {
      const Vec2 u = direction(par.theta);
      double da = inf;
      for (Vec2 x : samples) {
        const Vec2 d = x - fan.vertex;
        da = std::min(da, std::abs(dot(u, d)) / norm(d));
      }
      // A fan ray parallel to u can cross the interior without touching a sample
      // only if lambda . u lies inside the offset range.
      const Interval off = pg.domain.offset_range(par.theta);
      const double s = dot(fan.vertex, u);
      rep.delta_offset = off.contains(s) ? 0.0 : std::min(std::abs(s - off.lo), std::abs(s - off.hi));
      rep.delta_angle = rep.delta_offset == 0.0 ? 0.0 : da;
      margin = std::min(rep.delta_angle, rep.delta_offset);
      if (!(margin > threshold))
        rep.failures.push_back("a fan ray through the domain is parallel to the parallel lines");
    } else {
      margin = 0.0;
    }
    break;
  }
  case PairKind::fan_fan: {
    const auto &f1 = std::get<FanGeometry>(pg.first);
    const auto &f2 = std::get<FanGeometry>(pg.second);
    check_fan_view(f1, pg.domain, rep, "first");
    check_fan_view(f2, pg.domain, rep, "second");
    if (!rep.failures.empty()) {
      margin = 0.0;
      break;
    }
    const Vec2 dl = f2.vertex - f1.vertex;
    const int s = fan_orientation(f1.vertex, f2.vertex, pg.domain);
    rep.orientation = s;
    double eb = inf, ec = inf;
    for (Vec2 x : samples) {
      const Vec2 d1 = (1.0 / norm(x - f1.vertex)) * (x - f1.vertex);
      const Vec2 d2 = (1.0 / norm(x - f2.vertex)) * (x - f2.vertex);
      eb = std::min({eb, s * dot(perp(d1), dl), s * dot(perp(d2), dl)});
      ec = std::min(ec, -s * dot(perp(d1), d2));
    }
    // The segment between the vertices must not meet the domain either.
    const double len = norm(dl);
    for (auto [a, b] : pg.domain.chord(f1.vertex, (1.0 / len) * dl, 0.0))
      if (a < len) {
        eb = std::min(eb, 0.0);
        rep.failures.push_back("the line joining the vertices crosses the domain");
        break;
      }
    rep.epsilon_baseline = eb;
    rep.epsilon_crossing = ec;
    margin = std::min(eb, ec);
    if (!(eb > threshold) && rep.failures.empty())
      rep.failures.push_back("the domain is not inside one half-plane of the vertex line");
    if (!(ec > threshold))
      rep.failures.push_back("rays of the two fans are parallel somewhere in the domain");
    break;
  }
  }
  if (rep.vertex_distance != inf)
    margin = std::min(margin, rep.vertex_distance);
  else
    rep.vertex_distance = 0.0;
  rep.margin = margin;
  rep.admissible = rep.failures.empty() && margin > threshold;
  return rep;
}

Interval ray_range(const ViewGeometry &g, const ImageDomain &domain) {
  if (const auto *f = std::get_if<FanGeometry>(&g))
    return domain.angular_range(f->vertex, f->theta0);
  return domain.offset_range(std::get<ParGeometry>(g).theta);
}

double central_parameter(const ViewGeometry &g, const ImageDomain &domain) {
  return ray_range(g, domain).mid();
}

} // namespace pprc
