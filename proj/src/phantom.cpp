#include "pprc/phantom.hpp"

#include "pprc/errors.hpp"
#include "pprc/quadrature.hpp"

#include <boost/math/special_functions/expint.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <random>

namespace pprc {

double Bump::operator()(Vec2 x) const {
  const Vec2 d = x - center;
  const double s2 = dot(d, d) / (radius * radius);
  if (s2 >= 1.0)
    return 0.0;
  return amplitude * std::exp(-1.0 / (1.0 - s2));
}

double Bump::on_line(double offset, double s) const {
  const double s2 = (offset * offset + s * s) / (radius * radius);
  if (s2 >= 1.0)
    return 0.0;
  return amplitude * std::exp(-1.0 / (1.0 - s2));
}

double unit_bump_mass() {
  static const double m = kPi * (std::exp(-1.0) - boost::math::expint(1, 1.0));
  return m;
}

Phantom::Phantom(std::vector<Bump> bumps) : bumps_(std::move(bumps)) {
  for (const auto &b : bumps_)
    if (!(b.radius > 0.0) || !std::isfinite(b.amplitude))
      throw ConfigurationError("bump radius must be positive and amplitude finite");
}

void Phantom::add(const Bump &b) {
  if (!(b.radius > 0.0) || !std::isfinite(b.amplitude))
    throw ConfigurationError("bump radius must be positive and amplitude finite");
  bumps_.push_back(b);
}

double Phantom::operator()(Vec2 x) const {
  double v = 0.0;
  for (const auto &b : bumps_)
    v += b(x);
  return v;
}

double Phantom::mass() const {
  double m = 0.0;
  for (const auto &b : bumps_)
    m += b.amplitude * b.radius * b.radius;
  return m * unit_bump_mass();
}

double Phantom::l2_norm() const {
  if (bumps_.empty())
    return 0.0;
  Vec2 lo = bumps_.front().center, hi = lo;
  double rmin = bumps_.front().radius;
  for (const auto &b : bumps_) {
    lo = {std::min(lo.x, b.center.x - b.radius), std::min(lo.y, b.center.y - b.radius)};
    hi = {std::max(hi.x, b.center.x + b.radius), std::max(hi.y, b.center.y + b.radius)};
    rmin = std::min(rmin, b.radius);
  }
  const int nx = std::max(4, static_cast<int>(std::ceil(8.0 * (hi.x - lo.x) / rmin)));
  const int ny = std::max(4, static_cast<int>(std::ceil(8.0 * (hi.y - lo.y) / rmin)));
  const double sum = integrate_fixed(
      [&](double y) {
        return integrate_fixed(
            [&](double x) {
              const double v = (*this)({x, y});
              return v * v;
            },
            lo.x, hi.x, nx, 8);
      },
      lo.y, hi.y, ny, 8);
  return std::sqrt(sum);
}

bool Phantom::supported_in(const ImageDomain &domain) const {
  for (const auto &b : bumps_)
    if (!domain.contains(b.center) || domain.distance_to_boundary(b.center) <= b.radius)
      return false;
  return true;
}

Phantom random_phantom(const ImageDomain &domain, int count, std::uint64_t seed, double margin) {
  std::mt19937_64 rng(seed);
  const Vec2 lo = domain.bbox_min();
  const Vec2 hi = domain.bbox_max();
  const double scale = domain.diameter();
  std::uniform_real_distribution<double> ux(lo.x, hi.x), uy(lo.y, hi.y);
  std::uniform_real_distribution<double> ur(0.04 * scale, 0.15 * scale), ua(0.5, 2.0);
  std::vector<Bump> bumps;
  int attempts = 0;
  while (static_cast<int>(bumps.size()) < count) {
    if (++attempts > 100000)
      throw ConfigurationError("random_phantom: domain too small for the requested bumps");
    const Vec2 c{ux(rng), uy(rng)};
    double r = ur(rng);
    const double a = ua(rng);
    if (!domain.contains(c))
      continue;
    const double room = domain.distance_to_boundary(c) - margin;
    if (room <= 0.05 * r)
      continue;
    r = std::min(r, room);
    bumps.push_back({c, r, a});
  }
  return Phantom(std::move(bumps));
}

double target_half_range() { return std::atan(5.0 / 12.0); }

double inconceivable_g2(double r) {
  if (!(std::abs(r) < target_half_range()))
    throw DomainError(fmt::format("inconceivable_g2: r={} outside the target view range", r));
  if (std::abs(r) >= std::atan(1.0 / 6.0))
    return 0.0;
  const double t = std::tan(r);
  return std::max(0.0, 0.25 - 9.0 * t * t);
}

DataPair inconceivable_target(const DetectorGrid &grid1, const DetectorGrid &grid2,
                              double center2) {
  DataPair d{ProjectionData(grid1), ProjectionData(grid2)};
  for (int k = 0; k < grid2.n_bins; ++k)
    d.second.values[k] = inconceivable_g2(grid2.sample(k) - center2);
  return d;
}

} // namespace pprc
