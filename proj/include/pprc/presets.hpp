#pragma once

#include "pprc/domain.hpp"
#include "pprc/geometry.hpp"
#include "pprc/sampling.hpp"

namespace pprc::presets {

inline constexpr Vec2 kLambda1{0.0, 80.0};
inline constexpr Vec2 kLambda2{-80.0, 0.0};
inline constexpr double kMu = -0.154;

/// {(x, y) in (-35, 35)^2 : |y| < 5/12 (x + 80), |x| < 5/12 (80 - y)}.
ImageDomain experiment_domain();

/// Fan pair with vertices (0, 80) and (-80, 0) over experiment_domain().
PairGeometry experiment_pair(double mu = kMu);

/// Fan pair with vertices (0, 0) and (0, -40), branch angle 0 and a disc
/// domain that contains all four intersection points of the counterexample
/// tuple.
PairGeometry counterexample_pair(double mu = kMu);

/// Detector grid over ray_range of the given view.
DetectorGrid view_grid(const PairGeometry &pg, int view, int n_bins);

} // namespace pprc::presets
