#pragma once

#include "pprc/discrete.hpp"
#include "pprc/geometry.hpp"
#include "pprc/phantom.hpp"
#include "pprc/sampling.hpp"

#include <boost/property_tree/ptree.hpp>

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace pprc::io {

/// "r,value" rows with 17 significant digits.
void write_projection_csv(const std::filesystem::path &path, const ProjectionData &d);
/// Reads a file written by write_projection_csv; the grid is rebuilt from the
/// (uniform, midpoint-aligned) sample positions.
ProjectionData read_projection_csv(const std::filesystem::path &path);

/// Text header "pprc-image <nx> <ny> <extent>\n" followed by nx*ny raw
/// little-endian doubles in flat index order.
void write_image(const std::filesystem::path &path, const ImageGrid &grid,
                 std::span<const double> values);
struct Image {
  int nx = 0;
  int ny = 0;
  double extent = 0.0;
  std::vector<double> values;
};
Image read_image(const std::filesystem::path &path);

/// 8-bit binary graymap, top row = largest y. Values are clamped to
/// [level - window/2, level + window/2]; window <= 0 means the data range.
void write_pgm(const std::filesystem::path &path, int nx, int ny, std::span<const double> values,
               double window = 0.0, double level = 0.0);

/// "cx,cy,radius,amplitude" records; '#' starts a comment line.
Phantom read_phantom_csv(const std::filesystem::path &path);
void write_phantom_csv(const std::filesystem::path &path, const Phantom &f);

void write_history_csv(const std::filesystem::path &path, std::span<const double> history);

/// Two-column CSV with the given header names.
void write_columns_csv(const std::filesystem::path &path, const std::string &a,
                       const std::string &b, std::span<const double> x,
                       std::span<const double> y);

enum class AngleUnit { radians, degrees };

/// Sections [first], [second], [domain]. View keys: kind = par|fan, theta
/// (par), vertex_x, vertex_y, theta0, mu (fan). Domain keys: kind =
/// rectangle|disc|polygon with min_x/min_y/max_x/max_y, center_x/center_y/
/// radius, or vertices = "x y; x y; ...".
void put_pair_geometry(boost::property_tree::ptree &tree, const PairGeometry &pg, AngleUnit unit);
/// Missing theta0 for fan-fan pairs selects default_theta0.
PairGeometry get_pair_geometry(const boost::property_tree::ptree &tree, AngleUnit unit);

void write_pair_geometry(const std::filesystem::path &path, const PairGeometry &pg,
                         AngleUnit unit = AngleUnit::degrees);
PairGeometry read_pair_geometry(const std::filesystem::path &path,
                                AngleUnit unit = AngleUnit::degrees);

} // namespace pprc::io
