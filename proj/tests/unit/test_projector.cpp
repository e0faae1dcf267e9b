#include "oracles.hpp"

#include "pprc/errors.hpp"
#include "pprc/presets.hpp"
#include "pprc/projector.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace pprc;

namespace {

// Direct line integral of the phantom by adaptive Simpson on each bump's
// bounding window of the line parameter.
double oracle_par(const Phantom &f, double theta, double r) {
  const double c = std::cos(theta), s = std::sin(theta);
  double total = 0.0;
  for (const auto &b : f.bumps()) {
    const double tc = -s * b.center.x + c * b.center.y;
    total += oracle::simpson(
        [&](double t) {
          const double x = r * c - t * s, y = r * s + t * c;
          const double dx = x - b.center.x, dy = y - b.center.y;
          return b.amplitude * oracle::mollifier((dx * dx + dy * dy) / (b.radius * b.radius));
        },
        tc - b.radius, tc + b.radius, 1e-14);
  }
  return total;
}

double oracle_fan(const Phantom &f, Vec2 vertex, double mu, double r) {
  const double c = std::cos(r), s = std::sin(r);
  double total = 0.0;
  for (const auto &b : f.bumps()) {
    const double tc = (b.center.x - vertex.x) * c + (b.center.y - vertex.y) * s;
    const double lo = std::max(0.0, tc - b.radius);
    if (tc + b.radius <= lo)
      continue;
    total += oracle::simpson(
        [&](double t) {
          const double dx = vertex.x + t * c - b.center.x, dy = vertex.y + t * s - b.center.y;
          return std::exp(mu * t) * b.amplitude *
                 oracle::mollifier((dx * dx + dy * dy) / (b.radius * b.radius));
        },
        lo, tc + b.radius, 1e-14);
  }
  return total;
}

} // namespace

TEST(Projector, CentralLineThroughUnitBump) {
  const Phantom f({Bump{{0, 0}, 1.0, 1.0}});
  // int exp(-1/(1 - 0.09 - s^2)) ds, mpmath
  EXPECT_NEAR(project_ray(ParGeometry{0.0}, f, 0.3), 0.374108186275797674, 1e-12);
  EXPECT_EQ(project_ray(ParGeometry{0.0}, f, 1.0), 0.0);
  EXPECT_EQ(project_ray(ParGeometry{0.0}, f, -2.5), 0.0);
}

TEST(Projector, ParallelMatchesOracle) {
  const Phantom f({Bump{{3, -2}, 4.0, 1.3}, Bump{{-5, 1}, 2.5, -0.7}});
  for (double theta : {0.0, 0.4, 2.0, -1.1})
    for (double r = -10; r <= 10; r += 0.73)
      EXPECT_NEAR(project_ray(ParGeometry{theta}, f, r), oracle_par(f, theta, r), 1e-9)
          << "theta=" << theta << " r=" << r;
}

TEST(Projector, AttenuatedFanMatchesOracle) {
  const auto pg = presets::experiment_pair();
  const auto f = random_phantom(pg.domain, 5, 17);
  for (const auto *view : {&pg.first, &pg.second}) {
    const auto &fan = std::get<FanGeometry>(*view);
    const auto grid = DetectorGrid(ray_range(*view, pg.domain), 37);
    for (int k = 0; k < grid.n_bins; ++k) {
      const double r = grid.sample(k);
      EXPECT_NEAR(project_ray(*view, f, r), oracle_fan(f, fan.vertex, fan.mu, r), 1e-10);
    }
  }
}

TEST(Projector, FanIgnoresSupportBehindVertex) {
  const Phantom f({Bump{{-2, 0}, 1.0, 1.0}});
  const FanGeometry g{{0, 0}, -kPi, 0.0};
  EXPECT_EQ(project_ray(g, f, 0.0), 0.0);
  EXPECT_NEAR(project_ray(g, f, kPi - 1e-13), project_ray(ParGeometry{kPi / 2}, f, 0.0), 1e-9);
}

TEST(Projector, PartialChordThroughVertex) {
  // Vertex at the bump center: only the half chord t > 0 is integrated.
  const Phantom f({Bump{{0, 0}, 1.0, 1.0}});
  const FanGeometry g{{0, 0}, -kPi, 0.0};
  EXPECT_NEAR(project_ray(g, f, 0.3), 0.5 * project_ray(ParGeometry{kPi / 2}, f, 0.0), 1e-12);
}

TEST(Projector, Linearity) {
  const Bump a{{1, 1}, 3.0, 1.0}, b{{-4, 2}, 2.0, 2.0};
  const FanGeometry g{{-80, 0}, -kPi, -0.154};
  for (double r = -0.1; r <= 0.1; r += 0.01) {
    const double sum = project_ray(g, Phantom({a}), r) + project_ray(g, Phantom({b}), r);
    EXPECT_NEAR(project_ray(g, Phantom({a, b}), r), sum, 1e-13);
  }
}

TEST(Projector, ViewIsIndependentOfThreadCount) {
  const auto pg = presets::experiment_pair();
  const auto f = random_phantom(pg.domain, 10, 5);
  const auto grid = presets::view_grid(pg, 1, 101);
  const auto a = project_view(pg.first, f, grid, {}, 1);
  const auto b = project_view(pg.first, f, grid, {}, 4);
  ASSERT_EQ(a.values.size(), 101u);
  for (std::size_t k = 0; k < a.values.size(); ++k)
    EXPECT_EQ(a.values[k], b.values[k]);
}

TEST(Projector, BinnedAveragesMatchOracle) {
  const Phantom f({Bump{{0, 0}, 5.0, 1.0}});
  const DetectorGrid grid(-6.0, 6.0, 12);
  const auto binned = project_view_binned(ParGeometry{0.3}, f, grid, {}, 16);
  for (int k = 0; k < grid.n_bins; ++k) {
    const double lo = grid.lo + k * grid.step();
    const double avg =
        oracle::simpson([&](double r) { return oracle_par(f, 0.3, r); }, lo, lo + grid.step(), 1e-12) /
        grid.step();
    EXPECT_NEAR(binned.values[k], avg, 1e-9);
  }
  EXPECT_THROW(project_view_binned(ParGeometry{0.3}, f, grid, {}, 5), ConfigurationError);
}

TEST(Projector, NonConvergenceReportsRayIndex) {
  const Phantom f({Bump{{0, 0}, 1.0, 1.0}});
  QuadratureSpec strict;
  strict.abs_tol = 0.0;
  strict.rel_floor = 0.0;
  strict.max_depth = 0;
  EXPECT_THROW(project_ray(ParGeometry{0.0}, f, 0.0, strict), AccuracyError);
  const DetectorGrid grid(-2.0, 2.0, 4);
  try {
    project_view(ParGeometry{0.0}, f, grid, strict, 2);
    FAIL() << "expected AccuracyError";
  } catch (const AccuracyError &e) {
    ASSERT_TRUE(e.ray_index().has_value());
    EXPECT_EQ(*e.ray_index(), 1u);
  }
}

TEST(Projector, ContinuityBoundHolds) {
  const auto pg = presets::experiment_pair();
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const auto f = random_phantom(pg.domain, 6, seed);
    for (const auto *view : {&pg.first, &pg.second}) {
      const auto cb = continuity_bound_check(*view, pg.domain, f);
      EXPECT_TRUE(cb.holds()) << cb.lhs << " > " << cb.rhs;
      EXPECT_GT(cb.lhs, 0.0);
    }
  }
}

TEST(Projector, ContinuityConstantForDisc) {
  const auto dom = ImageDomain::disc({0, 0}, 8);
  const auto cb = continuity_bound_check(ParGeometry{0.7}, dom, Phantom{});
  EXPECT_NEAR(cb.sup_chord, 16.0, 1e-9);
  EXPECT_EQ(cb.sup_jacobian, 1.0);
  EXPECT_EQ(cb.sup_weight, 1.0);
  EXPECT_NEAR(cb.constant, 4.0, 1e-9);

  const auto fan = continuity_bound_check(FanGeometry{{-20, 0}, -kPi, -0.1}, dom, Phantom{});
  EXPECT_NEAR(fan.sup_jacobian, 1.0 / 12.0, 1e-12);
  EXPECT_NEAR(fan.sup_weight, std::exp(-1.2), 1e-12);
  EXPECT_NEAR(fan.sup_chord, 16.0, 1e-9);
}
