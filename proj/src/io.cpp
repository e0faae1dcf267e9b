#include "pprc/io.hpp"

#include "pprc/errors.hpp"

#include <boost/algorithm/string.hpp>
#include <boost/property_tree/ini_parser.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <sstream>

namespace pprc::io {
namespace pt = boost::property_tree;

namespace {

std::ofstream open_out(const std::filesystem::path &path, bool binary = false) {
  std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
  if (!out)
    throw ConfigurationError(fmt::format("cannot write {}", path.string()));
  return out;
}

std::ifstream open_in(const std::filesystem::path &path, bool binary = false) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  if (!in)
    throw ConfigurationError(fmt::format("cannot read {}", path.string()));
  return in;
}

std::vector<double> split_numbers(const std::string &line, const std::filesystem::path &path) {
  std::vector<std::string> parts;
  boost::split(parts, line, boost::is_any_of(","));
  std::vector<double> v;
  for (auto &p : parts) {
    boost::trim(p);
    try {
      std::size_t used = 0;
      v.push_back(std::stod(p, &used));
      if (used != p.size())
        throw std::invalid_argument(p);
    } catch (const std::exception &) {
      throw ConfigurationError(fmt::format("{}: cannot parse '{}' as a number", path.string(), p));
    }
  }
  return v;
}

constexpr double kDeg = kPi / 180.0;

double to_unit(double rad, AngleUnit u) { return u == AngleUnit::degrees ? rad / kDeg : rad; }
double from_unit(double v, AngleUnit u) { return u == AngleUnit::degrees ? v * kDeg : v; }

std::string num(double v) { return fmt::format("{:.17g}", v); }

} // namespace

void write_projection_csv(const std::filesystem::path &path, const ProjectionData &d) {
  auto out = open_out(path);
  out << "r,value\n";
  for (int k = 0; k < d.grid.n_bins; ++k)
    out << fmt::format("{:.17g},{:.17g}\n", d.grid.sample(k), d.values[k]);
}

ProjectionData read_projection_csv(const std::filesystem::path &path) {
  auto in = open_in(path);
  std::string line;
  std::vector<double> r, v;
  bool header = true;
  while (std::getline(in, line)) {
    boost::trim(line);
    if (line.empty() || line[0] == '#')
      continue;
    if (header) {
      header = false;
      if (!std::isdigit(static_cast<unsigned char>(line[0])) && line[0] != '-' && line[0] != '.')
        continue;
    }
    const auto nums = split_numbers(line, path);
    if (nums.size() != 2)
      throw ConfigurationError(fmt::format("{}: expected two columns per row", path.string()));
    r.push_back(nums[0]);
    v.push_back(nums[1]);
  }
  if (r.size() < 2)
    throw ConfigurationError(fmt::format("{}: need at least two samples", path.string()));
  const double step = (r.back() - r.front()) / static_cast<double>(r.size() - 1);
  for (std::size_t k = 1; k < r.size(); ++k)
    if (std::abs((r[k] - r[k - 1]) - step) > 1e-9 * std::max(1.0, std::abs(step)))
      throw ConfigurationError(fmt::format("{}: samples are not uniformly spaced", path.string()));
  DetectorGrid grid(r.front() - 0.5 * step, r.back() + 0.5 * step, static_cast<int>(r.size()));
  return ProjectionData(grid, std::move(v));
}

void write_image(const std::filesystem::path &path, const ImageGrid &grid,
                 std::span<const double> values) {
  if (values.size() != grid.size())
    throw ConfigurationError("write_image: value count does not match the grid");
  auto out = open_out(path, true);
  out << fmt::format("pprc-image {} {} {:.17g}\n", grid.nx, grid.ny, grid.extent);
  for (double v : values) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    if constexpr (std::endian::native == std::endian::big)
      bits = __builtin_bswap64(bits);
    out.write(reinterpret_cast<const char *>(&bits), sizeof bits);
  }
}

Image read_image(const std::filesystem::path &path) {
  auto in = open_in(path, true);
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  std::string magic;
  Image img;
  if (!(hs >> magic >> img.nx >> img.ny >> img.extent) || magic != "pprc-image" || img.nx <= 0 ||
      img.ny <= 0)
    throw ConfigurationError(fmt::format("{}: not a pprc image", path.string()));
  img.values.resize(static_cast<std::size_t>(img.nx) * img.ny);
  for (double &v : img.values) {
    std::uint64_t bits = 0;
    if (!in.read(reinterpret_cast<char *>(&bits), sizeof bits))
      throw ConfigurationError(fmt::format("{}: truncated image data", path.string()));
    if constexpr (std::endian::native == std::endian::big)
      bits = __builtin_bswap64(bits);
    v = std::bit_cast<double>(bits);
  }
  return img;
}

void write_pgm(const std::filesystem::path &path, int nx, int ny, std::span<const double> values,
               double window, double level) {
  if (values.size() != static_cast<std::size_t>(nx) * ny)
    throw ConfigurationError("write_pgm: value count does not match the size");
  double lo, hi;
  if (window > 0.0) {
    lo = level - 0.5 * window;
    hi = level + 0.5 * window;
  } else {
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    lo = values.empty() ? 0.0 : *mn;
    hi = values.empty() ? 1.0 : *mx;
  }
  const double span = hi > lo ? hi - lo : 1.0;
  auto out = open_out(path, true);
  out << "P5\n" << nx << ' ' << ny << "\n255\n";
  std::vector<unsigned char> row(nx);
  for (int j = ny - 1; j >= 0; --j) {
    for (int i = 0; i < nx; ++i) {
      const double u = std::clamp((values[static_cast<std::size_t>(j) * nx + i] - lo) / span, 0.0, 1.0);
      row[i] = static_cast<unsigned char>(std::lround(255.0 * u));
    }
    out.write(reinterpret_cast<const char *>(row.data()), nx);
  }
}

Phantom read_phantom_csv(const std::filesystem::path &path) {
  auto in = open_in(path);
  std::string line;
  std::vector<Bump> bumps;
  while (std::getline(in, line)) {
    boost::trim(line);
    if (line.empty() || line[0] == '#' || std::isalpha(static_cast<unsigned char>(line[0])))
      continue;
    const auto v = split_numbers(line, path);
    if (v.size() != 4)
      throw ConfigurationError(
          fmt::format("{}: expected cx,cy,radius,amplitude per row", path.string()));
    bumps.push_back({{v[0], v[1]}, v[2], v[3]});
  }
  return Phantom(std::move(bumps));
}

void write_phantom_csv(const std::filesystem::path &path, const Phantom &f) {
  auto out = open_out(path);
  out << "cx,cy,radius,amplitude\n";
  for (const auto &b : f.bumps())
    out << fmt::format("{:.17g},{:.17g},{:.17g},{:.17g}\n", b.center.x, b.center.y, b.radius,
                       b.amplitude);
}

void write_history_csv(const std::filesystem::path &path, std::span<const double> history) {
  auto out = open_out(path);
  out << "iteration,relative_residual\n";
  for (std::size_t k = 0; k < history.size(); ++k)
    out << fmt::format("{},{:.17g}\n", k, history[k]);
}

void write_columns_csv(const std::filesystem::path &path, const std::string &a,
                       const std::string &b, std::span<const double> x,
                       std::span<const double> y) {
  auto out = open_out(path);
  out << a << ',' << b << '\n';
  for (std::size_t k = 0; k < std::min(x.size(), y.size()); ++k)
    out << fmt::format("{:.17g},{:.17g}\n", x[k], y[k]);
}

namespace {

void put_view(pt::ptree &t, const std::string &sec, const ViewGeometry &v, AngleUnit u) {
  if (const auto *f = std::get_if<FanGeometry>(&v)) {
    t.put(sec + ".kind", "fan");
    t.put(sec + ".vertex_x", num(f->vertex.x));
    t.put(sec + ".vertex_y", num(f->vertex.y));
    t.put(sec + ".theta0", num(to_unit(f->theta0, u)));
    t.put(sec + ".mu", num(f->mu));
  } else {
    t.put(sec + ".kind", "par");
    t.put(sec + ".theta", num(to_unit(std::get<ParGeometry>(v).theta, u)));
  }
}

template <class T> T require(const pt::ptree &t, const std::string &key) {
  auto v = t.get_optional<T>(key);
  if (!v)
    throw ConfigurationError(fmt::format("missing or malformed key '{}'", key));
  return *v;
}

ViewGeometry get_view(const pt::ptree &t, const std::string &sec, AngleUnit u, bool &has_theta0) {
  const auto kind = require<std::string>(t, sec + ".kind");
  if (kind == "par")
    return ParGeometry{from_unit(require<double>(t, sec + ".theta"), u)};
  if (kind != "fan")
    throw ConfigurationError(fmt::format("{}.kind must be 'par' or 'fan', got '{}'", sec, kind));
  FanGeometry f;
  f.vertex = {require<double>(t, sec + ".vertex_x"), require<double>(t, sec + ".vertex_y")};
  f.mu = t.get<double>(sec + ".mu", 0.0);
  if (auto th = t.get_optional<double>(sec + ".theta0")) {
    f.theta0 = from_unit(*th, u);
    has_theta0 = true;
  } else {
    has_theta0 = false;
  }
  return f;
}

} // namespace

void put_pair_geometry(pt::ptree &t, const PairGeometry &pg, AngleUnit u) {
  put_view(t, "first", pg.first, u);
  put_view(t, "second", pg.second, u);
  const auto &d = pg.domain;
  t.put("domain.kind", to_string(d.kind()));
  switch (d.kind()) {
  case ImageDomain::Kind::rectangle:
    t.put("domain.min_x", num(d.bbox_min().x));
    t.put("domain.min_y", num(d.bbox_min().y));
    t.put("domain.max_x", num(d.bbox_max().x));
    t.put("domain.max_y", num(d.bbox_max().y));
    break;
  case ImageDomain::Kind::disc:
    t.put("domain.center_x", num(d.center().x));
    t.put("domain.center_y", num(d.center().y));
    t.put("domain.radius", num(d.radius()));
    break;
  case ImageDomain::Kind::polygon: {
    std::string s;
    for (Vec2 v : d.vertices())
      s += (s.empty() ? "" : "; ") + num(v.x) + " " + num(v.y);
    t.put("domain.vertices", s);
    break;
  }
  }
}

static ImageDomain get_domain(const pt::ptree &t) {
  const auto kind = require<std::string>(t, "domain.kind");
  if (kind == "rectangle")
    return ImageDomain::rectangle({require<double>(t, "domain.min_x"), require<double>(t, "domain.min_y")},
                                  {require<double>(t, "domain.max_x"), require<double>(t, "domain.max_y")});
  if (kind == "disc")
    return ImageDomain::disc({require<double>(t, "domain.center_x"), require<double>(t, "domain.center_y")},
                             require<double>(t, "domain.radius"));
  if (kind == "polygon") {
    const auto text = require<std::string>(t, "domain.vertices");
    std::vector<std::string> items;
    boost::split(items, text, boost::is_any_of(";"));
    std::vector<Vec2> verts;
    for (auto &it : items) {
      boost::trim(it);
      if (it.empty())
        continue;
      std::istringstream is(it);
      Vec2 v;
      if (!(is >> v.x >> v.y))
        throw ConfigurationError(fmt::format("domain.vertices: cannot parse '{}'", it));
      verts.push_back(v);
    }
    return ImageDomain::polygon(std::move(verts));
  }
  throw ConfigurationError(
      fmt::format("domain.kind must be rectangle, disc or polygon, got '{}'", kind));
}

PairGeometry get_pair_geometry(const pt::ptree &t, AngleUnit u) {
  bool th1 = false, th2 = false;
  PairGeometry pg{get_view(t, "first", u, th1), get_view(t, "second", u, th2), get_domain(t)};
  if (pg.kind() == PairKind::fan_fan) {
    auto &f1 = std::get<FanGeometry>(pg.first);
    auto &f2 = std::get<FanGeometry>(pg.second);
    const double th0 =
        default_theta0(f1.vertex, f2.vertex, fan_orientation(f1.vertex, f2.vertex, pg.domain));
    if (!th1)
      f1.theta0 = th0;
    if (!th2)
      f2.theta0 = th0;
  }
  return pg;
}

void write_pair_geometry(const std::filesystem::path &path, const PairGeometry &pg, AngleUnit u) {
  pt::ptree t;
  put_pair_geometry(t, pg, u);
  pt::write_ini(path.string(), t);
}

PairGeometry read_pair_geometry(const std::filesystem::path &path, AngleUnit u) {
  pt::ptree t;
  try {
    pt::read_ini(path.string(), t);
  } catch (const pt::ini_parser_error &e) {
    throw ConfigurationError(e.what());
  }
  return get_pair_geometry(t, u);
}

} // namespace pprc::io
