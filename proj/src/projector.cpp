#include "pprc/projector.hpp"

#include "pprc/errors.hpp"
#include "pprc/parallel.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace pprc {
namespace {

struct Line {
  Vec2 origin;
  Vec2 dir;
  double t_min;
  double mu;
};

Line line_of(const ViewGeometry &g, double r) {
  if (const auto *f = std::get_if<FanGeometry>(&g))
    return {f->vertex, direction(r), 0.0, f->mu};
  const auto &p = std::get<ParGeometry>(g);
  return {r * direction(p.theta), normal(p.theta), -std::numeric_limits<double>::infinity(), 0.0};
}

} // namespace

double project_ray(const ViewGeometry &g, const Phantom &f, double r, const QuadratureSpec &q) {
  const Line line = line_of(g, r);
  double total = 0.0;
  for (const auto &b : f.bumps()) {
    const Vec2 rel = b.center - line.origin;
    const double d = cross(line.dir, rel);
    const double tc = dot(rel, line.dir);
    const double h2 = b.radius * b.radius - d * d;
    if (h2 <= 0.0)
      continue;
    const double h = std::sqrt(h2);
    const double a = std::max(-h, line.t_min - tc);
    if (a >= h)
      continue;
    const double mu = line.mu;
    auto integrand = [&](double s) {
      const double v = b.on_line(d, s);
      return mu == 0.0 ? v : v * std::exp(mu * (tc + s));
    };
    const auto res = integrate(integrand, a, h, q);
    if (!res.converged)
      throw AccuracyError(fmt::format("project_ray: quadrature did not converge at r={}", r),
                          res.value, res.error_estimate);
    total += res.value;
  }
  return total;
}

ProjectionData project_view(const ViewGeometry &g, const Phantom &f, const DetectorGrid &grid,
                            const QuadratureSpec &q, int threads) {
  ProjectionData out(grid);
  parallel_for(grid.size(), threads, [&](std::size_t k) {
    try {
      out.values[k] = project_ray(g, f, grid.sample(static_cast<int>(k)), q);
    } catch (const AccuracyError &e) {
      throw AccuracyError(e.what(), e.estimate(), e.achieved_tolerance(), k);
    }
  });
  return out;
}

ProjectionData project_view_binned(const ViewGeometry &g, const Phantom &f,
                                   const DetectorGrid &grid, const QuadratureSpec &q, int nodes,
                                   int threads) {
  std::vector<double> x, w;
  auto fill = [&](const auto &abscissa, const auto &weights) {
    for (std::size_t i = 0; i < abscissa.size(); ++i) {
      x.push_back(abscissa[i]);
      w.push_back(weights[i]);
      if (abscissa[i] != 0.0) {
        x.push_back(-abscissa[i]);
        w.push_back(weights[i]);
      }
    }
  };
  using boost::math::quadrature::gauss;
  switch (nodes) {
  case 4:
    fill(gauss<double, 4>::abscissa(), gauss<double, 4>::weights());
    break;
  case 8:
    fill(gauss<double, 8>::abscissa(), gauss<double, 8>::weights());
    break;
  case 16:
    fill(gauss<double, 16>::abscissa(), gauss<double, 16>::weights());
    break;
  default:
    throw ConfigurationError("project_view_binned: nodes must be 4, 8 or 16");
  }
  ProjectionData out(grid);
  const double half = 0.5 * grid.step();
  parallel_for(grid.size(), threads, [&](std::size_t k) {
    const double c = grid.sample(static_cast<int>(k));
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      try {
        s += w[i] * project_ray(g, f, c + half * x[i], q);
      } catch (const AccuracyError &e) {
        throw AccuracyError(e.what(), e.estimate(), e.achieved_tolerance(), k);
      }
    }
    out.values[k] = 0.5 * s;
  });
  return out;
}

ContinuityBound continuity_bound_check(const ViewGeometry &g, const ImageDomain &domain,
                                       const Phantom &f, const QuadratureSpec &q) {
  ContinuityBound cb;
  const Interval range = ray_range(g, domain);
  constexpr int kRays = 4096;
  const double step = range.width() / kRays;
  double sup_chord = 0.0;
  for (int k = 0; k <= kRays; ++k) {
    const Line line = line_of(g, range.lo + k * step);
    sup_chord = std::max(sup_chord, domain.chord_length(line.origin, line.dir, line.t_min));
  }
  cb.sup_chord = sup_chord;
  if (const auto *fan = std::get_if<FanGeometry>(&g)) {
    const double near = domain.distance(fan->vertex);
    const double far = domain.farthest_distance(fan->vertex);
    if (!(near > 0.0))
      throw DomainError("continuity_bound_check: fan vertex inside the domain");
    cb.sup_jacobian = 1.0 / near;
    cb.sup_weight = fan->mu < 0.0 ? std::exp(fan->mu * near) : std::exp(fan->mu * far);
  } else {
    cb.sup_jacobian = 1.0;
    cb.sup_weight = 1.0;
  }
  cb.constant = std::sqrt(cb.sup_chord * cb.sup_jacobian) * cb.sup_weight;
  if (f.empty())
    return cb;
  cb.f_norm = f.l2_norm();
  cb.rhs = cb.constant * cb.f_norm;
  // Pf is smooth in r, so a fixed composite rule is enough.
  const double sq = integrate_fixed(
      [&](double r) {
        const double v = project_ray(g, f, r, q);
        return v * v;
      },
      range.lo, range.hi, 128, 16);
  cb.lhs = std::sqrt(sq);
  return cb;
}

} // namespace pprc
