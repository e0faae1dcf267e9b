#include "pprc/discrete.hpp"
#include "pprc/errors.hpp"
#include "pprc/presets.hpp"
#include "pprc/projector.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

using namespace pprc;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d;
  std::vector<double> v(n);
  for (auto &x : v)
    x = d(rng);
  return v;
}

double dot(const std::vector<double> &a, const std::vector<double> &b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

// Dense system matrix of a fan view on a square grid without mask, built
// straight from the footprint definition.
std::vector<std::vector<double>> brute_force_fan(Vec2 vertex, double mu, int n, double extent,
                                                 double lo, double hi, int bins) {
  const double h = extent / n, step = (hi - lo) / bins;
  std::vector<std::vector<double>> cols;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const double cx = -extent / 2 + (i + 0.5) * h, cy = -extent / 2 + (j + 0.5) * h;
      double r = std::atan2(cy - vertex.y, cx - vertex.x);
      if (r < -kPi)
        r += 2 * kPi;
      const double t = std::hypot(cx - vertex.x, cy - vertex.y);
      const double width = h / t;
      const double mass = std::exp(mu * t) * h * h / t;
      std::vector<double> col(bins, 0.0);
      for (int k = 0; k < bins; ++k) {
        const double a = std::max(lo + k * step, r - width / 2);
        const double b = std::min(lo + (k + 1) * step, r + width / 2);
        if (b > a)
          col[k] = mass * (b - a) / width / step;
      }
      cols.push_back(col);
    }
  return cols;
}

} // namespace

TEST(Discrete, GridLayout) {
  const ImageGrid g(4, 2, 8.0);
  EXPECT_EQ(g.size(), 8u);
  EXPECT_EQ(g.index(3, 1), 7u);
  EXPECT_EQ(g.center(0, 0), (Vec2{-3.0, -2.0}));
  EXPECT_EQ(g.center(std::size_t{7}), (Vec2{3.0, 2.0}));
  EXPECT_DOUBLE_EQ(g.pixel_area(), 8.0);
  EXPECT_EQ(g.active_pixels(), 8u);
  EXPECT_THROW(ImageGrid(0, 3), ConfigurationError);
}

TEST(Discrete, WholePixelMask) {
  const auto dom = presets::experiment_domain();
  const ImageGrid g(64, 64, 70.0, dom);
  EXPECT_GT(g.active_pixels(), 0u);
  const double h = g.dx() / 2;
  std::size_t count_center = 0;
  for (std::size_t p = 0; p < g.size(); ++p) {
    const Vec2 c = g.center(p);
    if (dom.contains(c))
      ++count_center;
    if (!g.mask[p])
      continue;
    for (Vec2 d : {Vec2{-h, -h}, Vec2{h, -h}, Vec2{h, h}, Vec2{-h, h}})
      EXPECT_TRUE(dom.contains_closed(c + d));
  }
  EXPECT_LT(g.active_pixels(), count_center);
  EXPECT_GT(g.active_pixels() * g.pixel_area(), 0.85 * dom.area());
}

TEST(Discrete, RasterizeSamplesCenters) {
  const ImageGrid g(8, 8, 8.0);
  const Phantom f({Bump{{0.5, 0.5}, 2.0, 1.0}});
  const auto img = rasterize(g, f);
  EXPECT_DOUBLE_EQ(img[g.index(4, 4)], std::exp(-1.0));
  EXPECT_EQ(img[g.index(0, 0)], 0.0);
}

TEST(Discrete, MatchesBruteForceFanMatrix) {
  const Vec2 vertex{-80, 0};
  const double mu = -0.154;
  const ImageGrid g(5, 5, 5.0);
  const DetectorGrid d(-0.04, 0.04, 9);
  const ViewOperator op(FanGeometry{vertex, -kPi, mu}, g, d);
  const auto ref = brute_force_fan(vertex, mu, 5, 5.0, -0.04, 0.04, 9);
  for (std::size_t p = 0; p < g.size(); ++p) {
    const auto col = op.pixel_column(p);
    for (int k = 0; k < 9; ++k)
      EXPECT_NEAR(col[k], ref[p][k], 1e-12 * (1 + std::abs(ref[p][k]))) << "p=" << p << " k=" << k;
  }
}

TEST(Discrete, ColumnMassCarriesAttenuation) {
  // A pixel whose footprint lies inside the detector deposits
  // exp(mu t) * area / t in total (bin averages times bin width).
  const Vec2 vertex{-80, 0};
  const ImageGrid g(9, 9, 9.0);
  const DetectorGrid d(-0.1, 0.1, 40);
  const ViewOperator att(FanGeometry{vertex, -kPi, -0.154}, g, d);
  const ViewOperator none(FanGeometry{vertex, -kPi, 0.0}, g, d);
  for (int i = 0; i < 9; ++i) {
    const std::size_t p = g.index(i, 4);
    const auto a = att.pixel_column(p), b = none.pixel_column(p);
    const double sa = std::accumulate(a.begin(), a.end(), 0.0) * d.step();
    const double sb = std::accumulate(b.begin(), b.end(), 0.0) * d.step();
    const double t = g.center(p).x + 80.0;
    EXPECT_NEAR(sb, 1.0 / t, 1e-14);
    EXPECT_NEAR(sa / sb, std::exp(-0.154 * t), 1e-13);
  }
  // Along the central ray the attenuated response decays with depth.
  double prev = 1e300;
  for (int i = 0; i < 9; ++i) {
    const auto a = att.pixel_column(g.index(i, 4));
    const double v = a[20] + a[19];
    EXPECT_LT(v, prev);
    prev = v;
  }
}

TEST(Discrete, AdjointIdentity) {
  const auto pg = presets::experiment_pair();
  const ImageGrid img(40, 40, 70.0, pg.domain);
  const auto d1 = presets::view_grid(pg, 1, 23), d2 = presets::view_grid(pg, 2, 31);
  const PairOperator op(pg, img, d1, d2, 3);
  const auto f = random_vector(op.cols(), 1), g = random_vector(op.rows(), 2);
  std::vector<double> af(op.rows()), atg(op.cols());
  op.apply(f, af);
  op.apply_adjoint(g, atg);
  const double lhs = dot(af, g), rhs = dot(f, atg);
  EXPECT_NEAR(lhs, rhs, 1e-12 * std::abs(lhs));
  for (std::size_t p = 0; p < img.size(); ++p) {
    if (!img.mask[p]) {
      EXPECT_EQ(atg[p], 0.0);
    }
  }
}

TEST(Discrete, ParallelViewAdjoint) {
  const auto dom = ImageDomain::disc({0, 0}, 30);
  const PairGeometry pg{ParGeometry{0.2}, FanGeometry{{-80, 5}, -kPi, -0.1}, dom};
  const ImageGrid img(32, 32, 70.0, dom);
  const PairOperator op(pg, img, DetectorGrid(ray_range(pg.first, dom), 20),
                        DetectorGrid(ray_range(pg.second, dom), 20));
  const auto f = random_vector(op.cols(), 3), g = random_vector(op.rows(), 4);
  const auto af = stack(op.forward(f));
  const auto atg = op.adjoint(unstack(g, op.first().detector(), op.second().detector()));
  EXPECT_NEAR(dot(af, g), dot(f, atg), 1e-12 * std::abs(dot(af, g)));
}

TEST(Discrete, ThreadCountDoesNotChangeResults) {
  const auto pg = presets::experiment_pair();
  const ImageGrid img(64, 64, 70.0, pg.domain);
  const auto d1 = presets::view_grid(pg, 1, 32), d2 = presets::view_grid(pg, 2, 32);
  const PairOperator one(pg, img, d1, d2, 1), many(pg, img, d1, d2, 6);
  const auto f = random_vector(img.size(), 8);
  std::vector<double> a(one.rows()), b(one.rows());
  one.apply(f, a);
  many.apply(f, b);
  for (std::size_t k = 0; k < a.size(); ++k)
    EXPECT_EQ(a[k], b[k]);
  std::vector<double> u(img.size()), v(img.size());
  one.apply_adjoint(a, u);
  many.apply_adjoint(a, v);
  for (std::size_t p = 0; p < u.size(); ++p)
    EXPECT_EQ(u[p], v[p]);
}

TEST(Discrete, ApproximatesBinnedProjection) {
  const auto pg = presets::experiment_pair();
  const auto f = random_phantom(pg.domain, 6, 21);
  const ImageGrid img(256, 256, 70.0, pg.domain);
  const auto d1 = presets::view_grid(pg, 1, 64), d2 = presets::view_grid(pg, 2, 64);
  const PairOperator op(pg, img, d1, d2, 4);
  const auto disc = op.forward(rasterize(img, f));
  const auto ref = project_view_binned(pg.first, f, d1, {}, 8, 4);
  double num = 0, den = 0;
  for (std::size_t k = 0; k < ref.values.size(); ++k) {
    num += std::pow(disc.first.values[k] - ref.values[k], 2);
    den += ref.values[k] * ref.values[k];
  }
  EXPECT_LT(std::sqrt(num / den), 0.02);
}

TEST(Discrete, RejectsInadmissiblePair) {
  const auto pg = make_fan_pair({-50, 0}, {50, 0}, 0.0, ImageDomain::rectangle({-10, -10}, {10, 10}));
  const ImageGrid img(8, 8, 20.0);
  EXPECT_THROW(PairOperator(pg, img, DetectorGrid(-1, 1, 4), DetectorGrid(-1, 1, 4)),
               ConfigurationError);
}

TEST(Discrete, StackRoundTrip) {
  const DetectorGrid a(0, 1, 3), b(-1, 1, 2);
  const DataPair p{ProjectionData(a, {1, 2, 3}), ProjectionData(b, {4, 5})};
  const auto s = stack(p);
  EXPECT_EQ(s, (std::vector<double>{1, 2, 3, 4, 5}));
  const auto q = unstack(s, a, b);
  EXPECT_EQ(q.first.values, p.first.values);
  EXPECT_EQ(q.second.values, p.second.values);
  EXPECT_THROW(unstack(s, a, a), ConfigurationError);
}
