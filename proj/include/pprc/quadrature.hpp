#pragma once

#include <functional>

namespace pprc {

/// Composite Gauss-Legendre rule with panel doubling.
///
/// The panel count starts at one and doubles until two successive estimates
/// differ by less than max(abs_tol, rel_floor * |estimate|), or until
/// `max_depth` doublings have been made.
struct QuadratureSpec {
  int order = 16; ///< Gauss-Legendre points per panel: 8, 16 or 32.
  double abs_tol = 1e-10;
  double rel_floor = 1e-14;
  int max_depth = 14;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int panels = 0;
  bool converged = false;
};

/// Integrates f over [a, b]. Never throws on non-convergence; check `converged`.
QuadratureResult integrate(const std::function<double(double)> &f, double a, double b,
                           const QuadratureSpec &spec = {});

/// Fixed composite Gauss-Legendre rule with `panels` equal panels.
double integrate_fixed(const std::function<double(double)> &f, double a, double b, int panels,
                       int order = 16);

} // namespace pprc
