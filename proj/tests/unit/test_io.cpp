#include "pprc/errors.hpp"
#include "pprc/io.hpp"
#include "pprc/presets.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unistd.h>

using namespace pprc;
namespace fs = std::filesystem;

namespace {

class IoTest : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pprc_io_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path path(const std::string &name) const { return dir_ / name; }
  static std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
  }
  fs::path dir_;
};

} // namespace

TEST_F(IoTest, ProjectionRoundTripIsExact) {
  const DetectorGrid grid(4.317597860194057, 5.107183120780533, 37);
  ProjectionData d(grid);
  for (int k = 0; k < grid.n_bins; ++k)
    d.values[k] = std::sin(1.0 + k) / 3.0;
  io::write_projection_csv(path("p.csv"), d);
  EXPECT_EQ(slurp(path("p.csv")).substr(0, 8), "r,value\n");
  const auto back = io::read_projection_csv(path("p.csv"));
  EXPECT_EQ(back.values, d.values);
  EXPECT_EQ(back.grid.n_bins, 37);
  EXPECT_NEAR(back.grid.lo, grid.lo, 1e-13);
  EXPECT_NEAR(back.grid.hi, grid.hi, 1e-13);
}

TEST_F(IoTest, ProjectionRejectsBadFiles) {
  std::ofstream(path("bad.csv")) << "r,value\n0,1\n1,oops\n";
  EXPECT_THROW(io::read_projection_csv(path("bad.csv")), ConfigurationError);
  std::ofstream(path("uneven.csv")) << "r,value\n0,1\n1,1\n3,1\n";
  EXPECT_THROW(io::read_projection_csv(path("uneven.csv")), ConfigurationError);
  EXPECT_THROW(io::read_projection_csv(path("missing.csv")), ConfigurationError);
}

TEST_F(IoTest, ImageRoundTrip) {
  const ImageGrid g(3, 2, 6.0);
  const std::vector<double> v{1.5, -2, 3e-300, 4, 5, 6.25};
  io::write_image(path("i.img"), g, v);
  EXPECT_EQ(slurp(path("i.img")).rfind("pprc-image 3 2 6\n", 0), 0u);
  const auto img = io::read_image(path("i.img"));
  EXPECT_EQ(img.nx, 3);
  EXPECT_EQ(img.ny, 2);
  EXPECT_EQ(img.extent, 6.0);
  EXPECT_EQ(img.values, v);
  EXPECT_THROW(io::write_image(path("j.img"), g, std::vector<double>(5)), ConfigurationError);
  std::ofstream(path("t.img"), std::ios::binary) << "pprc-image 3 2 6\n" << "abc";
  EXPECT_THROW(io::read_image(path("t.img")), ConfigurationError);
}

TEST_F(IoTest, PgmLayout) {
  // flat index j * nx + i; the first stored row is the top (largest y).
  const std::vector<double> v{0, 0, 1, 1};
  io::write_pgm(path("a.pgm"), 2, 2, v);
  const std::string s = slurp(path("a.pgm"));
  const std::string header = "P5\n2 2\n255\n";
  ASSERT_EQ(s.substr(0, header.size()), header);
  const std::string px = s.substr(header.size());
  ASSERT_EQ(px.size(), 4u);
  EXPECT_EQ(static_cast<unsigned char>(px[0]), 255);
  EXPECT_EQ(static_cast<unsigned char>(px[3]), 0);
}

TEST_F(IoTest, PhantomRoundTrip) {
  const Phantom f({Bump{{1.25, -3}, 4, 0.5}, Bump{{-7, 2.5}, 1.5, -2}});
  io::write_phantom_csv(path("f.csv"), f);
  const auto g = io::read_phantom_csv(path("f.csv"));
  ASSERT_EQ(g.bumps().size(), 2u);
  EXPECT_EQ(g.bumps()[1].center, (Vec2{-7, 2.5}));
  EXPECT_EQ(g.bumps()[1].amplitude, -2);
  std::ofstream(path("c.csv")) << "# comment\n0,0,2,1\n";
  EXPECT_EQ(io::read_phantom_csv(path("c.csv")).bumps().size(), 1u);
}

TEST_F(IoTest, PairGeometryRoundTrip) {
  for (auto unit : {io::AngleUnit::degrees, io::AngleUnit::radians}) {
    const auto pg = presets::experiment_pair();
    io::write_pair_geometry(path("g.ini"), pg, unit);
    const auto back = io::read_pair_geometry(path("g.ini"), unit);
    ASSERT_EQ(back.kind(), PairKind::fan_fan);
    const auto &a = std::get<FanGeometry>(back.first);
    EXPECT_EQ(a.vertex, presets::kLambda1);
    EXPECT_NEAR(a.theta0, 0.75 * kPi, 1e-14);
    EXPECT_NEAR(a.mu, presets::kMu, 1e-15);
    ASSERT_EQ(back.domain.kind(), ImageDomain::Kind::polygon);
    EXPECT_NEAR(back.domain.area(), pg.domain.area(), 1e-9);
  }
  const PairGeometry pf{ParGeometry{0.3}, FanGeometry{{-80, 10}, -kPi, 0.0},
                        ImageDomain::disc({1, 2}, 30)};
  io::write_pair_geometry(path("pf.ini"), pf);
  const auto back = io::read_pair_geometry(path("pf.ini"));
  EXPECT_EQ(back.kind(), PairKind::par_fan);
  EXPECT_NEAR(std::get<ParGeometry>(back.first).theta, 0.3, 1e-14);
  EXPECT_EQ(back.domain.radius(), 30.0);
}

TEST_F(IoTest, FanPairWithoutBranchUsesDefault) {
  std::ofstream(path("g.ini")) << "[first]\nkind = fan\nvertex_x = 0\nvertex_y = 0\n"
                               << "[second]\nkind = fan\nvertex_x = 0\nvertex_y = -40\n"
                               << "[domain]\nkind = disc\ncenter_x = -44\ncenter_y = -32\nradius = 32\n";
  const auto pg = io::read_pair_geometry(path("g.ini"));
  EXPECT_NEAR(std::get<FanGeometry>(pg.first).theta0, 0.0, 1e-15);
  EXPECT_NEAR(std::get<FanGeometry>(pg.second).theta0, 0.0, 1e-15);
}

TEST_F(IoTest, MalformedGeometryIsConfigurationError) {
  std::ofstream(path("g.ini")) << "[first]\nkind = cone\n";
  EXPECT_THROW(io::read_pair_geometry(path("g.ini")), ConfigurationError);
  std::ofstream(path("h.ini")) << "[first]\nkind = par\ntheta = x\n";
  EXPECT_THROW(io::read_pair_geometry(path("h.ini")), ConfigurationError);
}

TEST_F(IoTest, HistoryCsv) {
  const std::vector<double> h{1.0, 0.5, 0.25};
  io::write_history_csv(path("h.csv"), h);
  std::istringstream in(slurp(path("h.csv")));
  std::string line;
  int rows = 0;
  while (std::getline(in, line))
    ++rows;
  EXPECT_EQ(rows, 4);
}
