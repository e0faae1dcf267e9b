#pragma once

#include "pprc/domain.hpp"
#include "pprc/sampling.hpp"
#include "pprc/vec.hpp"

#include <cstdint>
#include <vector>

namespace pprc {

/// amplitude * exp(-1 / (1 - s^2)) with s = |x - center| / radius, zero for s >= 1.
struct Bump {
  Vec2 center{};
  double radius = 1.0;
  double amplitude = 1.0;

  double operator()(Vec2 x) const;
  /// Value on the line at distance `offset` from the center, `s` along the line.
  double on_line(double offset, double s) const;
};

/// Integral of the unit bump (radius 1, amplitude 1) over the plane.
double unit_bump_mass();

class Phantom {
public:
  Phantom() = default;
  explicit Phantom(std::vector<Bump> bumps);

  const std::vector<Bump> &bumps() const { return bumps_; }
  bool empty() const { return bumps_.empty(); }
  void add(const Bump &b);

  double operator()(Vec2 x) const;
  /// Integral over the plane.
  double mass() const;
  /// L2 norm, by tensor Gauss quadrature over each support's bounding box.
  double l2_norm() const;
  /// Every closed support disc lies in the open domain.
  bool supported_in(const ImageDomain &domain) const;

private:
  std::vector<Bump> bumps_;
};

/// Random phantom with `count` bumps whose supports lie inside the domain,
/// at least `margin` cm away from its boundary.
Phantom random_phantom(const ImageDomain &domain, int count, std::uint64_t seed,
                       double margin = 1.0);

/// Half-width arctan(5/12) of the detector range around the central ray of
/// the target view.
double target_half_range();

/// Target profile 1/4 - 9 tan^2 r for |r| < arctan(1/6), else 0; r relative to
/// the central ray. Throws DomainError outside (-arctan(5/12), arctan(5/12)).
double inconceivable_g2(double r);

/// The target pair (0, g2) point-sampled on the two detector grids. `center2`
/// is the absolute angle of the central ray of the second view.
DataPair inconceivable_target(const DetectorGrid &grid1, const DetectorGrid &grid2,
                              double center2);

} // namespace pprc
