#include "pprc/domain.hpp"
#include "pprc/errors.hpp"
#include "pprc/presets.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace pprc;

TEST(Domain, PolygonIsNormalizedCounterclockwise) {
  const auto d = ImageDomain::polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
  EXPECT_DOUBLE_EQ(d.area(), 1.0);
  const auto v = d.vertices();
  double a = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    a += cross(v[i], v[(i + 1) % v.size()]);
  EXPECT_GT(a, 0.0);
}

TEST(Domain, RejectsDegeneratePolygons) {
  EXPECT_THROW(ImageDomain::polygon({{0, 0}, {1, 1}, {1, 0}, {0, 1}}), ConfigurationError);
  EXPECT_THROW(ImageDomain::polygon({{0, 0}, {1, 1}}), ConfigurationError);
  EXPECT_THROW(ImageDomain::polygon({{0, 0}, {1, 1}, {2, 2}}), ConfigurationError);
  EXPECT_THROW(ImageDomain::disc({0, 0}, -1), ConfigurationError);
  EXPECT_THROW(ImageDomain::rectangle({1, 0}, {0, 1}), ConfigurationError);
}

TEST(Domain, ContainsIsOpen) {
  const auto r = ImageDomain::rectangle({-1, -1}, {1, 1});
  EXPECT_TRUE(r.contains({0, 0}));
  EXPECT_FALSE(r.contains({1, 0}));
  EXPECT_TRUE(r.contains_closed({1, 0}));
  const auto d = ImageDomain::disc({1, 1}, 2);
  EXPECT_TRUE(d.contains({2, 2}));
  EXPECT_FALSE(d.contains({3, 1}));
}

TEST(Domain, ChordLengthsMatchElementaryGeometry) {
  const auto r = ImageDomain::rectangle({-2, -1}, {2, 1});
  EXPECT_NEAR(r.chord_length({-10, 0}, {1, 0}, 0), 4.0, 1e-12);
  EXPECT_NEAR(r.chord_length({0, -10}, {0, 1}, 0), 2.0, 1e-12);
  const double s = 1 / std::sqrt(2.0);
  EXPECT_NEAR(r.chord_length({-5, -5}, {s, s}, 0), 2 * std::sqrt(2.0), 1e-12);
  const auto d = ImageDomain::disc({0, 0}, 3);
  EXPECT_NEAR(d.chord_length({-10, 2}, {1, 0}, 0), 2 * std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(d.chord_length({0, 0}, {1, 0}, 0), 3.0, 1e-12);
  // non-convex: an L-shape crossed twice
  const auto l = ImageDomain::polygon({{0, 0}, {3, 0}, {3, 1}, {1, 1}, {1, 3}, {0, 3}});
  EXPECT_NEAR(l.chord_length({-1, 0.5}, {1, 0}, -INFINITY), 3.0, 1e-12);
  EXPECT_NEAR(l.chord_length({-1, 2}, {1, 0}, -INFINITY), 1.0, 1e-12);
  const auto u = ImageDomain::polygon({{0, 0}, {3, 0}, {3, 3}, {2, 3}, {2, 1}, {1, 1}, {1, 3}, {0, 3}});
  EXPECT_EQ(u.chord({-1, 2}, {1, 0}, -INFINITY).size(), 2u);
}

TEST(Domain, ExperimentPolygon) {
  const auto d = presets::experiment_domain();
  ASSERT_EQ(d.vertices().size(), 8u);
  const std::vector<Vec2> expected{{35, -35}, {4, -35},   {-35, -18.75}, {-35, -4},
                                   {-400.0 / 17, 400.0 / 17}, {4, 35}, {18.75, 35}, {35, -4}};
  for (Vec2 e : expected) {
    const bool found = std::any_of(d.vertices().begin(), d.vertices().end(),
                                   [&](Vec2 v) { return norm(v - e) < 1e-9; });
    EXPECT_TRUE(found) << e.x << ", " << e.y;
  }
  // area and centroid from an independent polygon clipper (shapely)
  EXPECT_NEAR(d.area(), 3818.8970588235297, 1e-9);
  EXPECT_NEAR(d.centroid().x, 2.2614181038339445, 1e-11);
  EXPECT_NEAR(d.centroid().y, -2.2614181038339436, 1e-11);
}

TEST(Domain, RangesAreExact) {
  const auto d = ImageDomain::disc({10, 0}, 5);
  const auto off = d.offset_range(0.0);
  EXPECT_NEAR(off.lo, 5, 1e-14);
  EXPECT_NEAR(off.hi, 15, 1e-14);
  const auto ang = d.angular_range({0, 0}, -kPi);
  EXPECT_NEAR(ang.lo, -std::asin(0.5), 1e-14);
  EXPECT_NEAR(ang.hi, std::asin(0.5), 1e-14);
  const auto e = presets::experiment_domain();
  const auto a2 = e.angular_range({-80, 0}, -kPi);
  EXPECT_NEAR(a2.lo, -std::atan(5.0 / 12.0), 1e-14);
  EXPECT_NEAR(a2.hi, std::atan(5.0 / 12.0), 1e-14);
}

TEST(Domain, DistancesAndSamples) {
  const auto r = ImageDomain::rectangle({0, 0}, {2, 2});
  EXPECT_NEAR(r.distance({3, 1}), 1.0, 1e-15);
  EXPECT_NEAR(r.distance({1, 1}), 0.0, 1e-15);
  EXPECT_NEAR(r.distance_to_boundary({1, 1}), 1.0, 1e-15);
  EXPECT_NEAR(r.farthest_distance({0, 0}), 2 * std::sqrt(2.0), 1e-15);
  const auto s = r.boundary_samples(80);
  EXPECT_EQ(s.size(), 84u);
  for (Vec2 p : s)
    EXPECT_LT(r.distance_to_boundary(p), 1e-12);
}

TEST(Domain, ClipHalfPlane) {
  const std::vector<Vec2> sq{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  const auto c = clip_half_plane(sq, {1, 0}, 1.0);
  const auto d = ImageDomain::polygon(c);
  EXPECT_NEAR(d.area(), 2.0, 1e-14);
}
