#pragma once

#include "pprc/domain.hpp"
#include "pprc/geometry.hpp"
#include "pprc/phantom.hpp"
#include "pprc/quadrature.hpp"
#include "pprc/sampling.hpp"

namespace pprc {

/// Weighted line integral of the phantom along the curve r of the view.
/// Integration runs over the exact chords of the bump supports.
/// Throws AccuracyError if a chord integral fails to converge.
double project_ray(const ViewGeometry &g, const Phantom &f, double r,
                   const QuadratureSpec &q = {});

/// project_ray at every sample of the grid. Rays are split over `threads`
/// workers; each ray is computed independently, so the result does not
/// depend on the thread count. AccuracyError carries the failing ray index.
ProjectionData project_view(const ViewGeometry &g, const Phantom &f, const DetectorGrid &grid,
                            const QuadratureSpec &q = {}, int threads = 1);

/// Bin averages (1/step) * integral of Pf over each detector bin, by a
/// `nodes`-point Gauss rule per bin.
ProjectionData project_view_binned(const ViewGeometry &g, const Phantom &f,
                                   const DetectorGrid &grid, const QuadratureSpec &q = {},
                                   int nodes = 8, int threads = 1);

struct ContinuityBound {
  double lhs = 0.0;      ///< ||Pf|| over the ray range
  double rhs = 0.0;      ///< c ||f||
  double constant = 0.0; ///< c = sqrt(sup chord * sup |det dgamma^-1/dx|) * sup rho
  double f_norm = 0.0;
  double sup_chord = 0.0;
  double sup_jacobian = 0.0;
  double sup_weight = 0.0;
  bool holds(double rel_slack = 1e-6) const { return lhs <= rhs * (1.0 + rel_slack); }
};

ContinuityBound continuity_bound_check(const ViewGeometry &g, const ImageDomain &domain,
                                       const Phantom &f, const QuadratureSpec &q = {});

} // namespace pprc
