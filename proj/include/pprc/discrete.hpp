#pragma once

#include "pprc/domain.hpp"
#include "pprc/geometry.hpp"
#include "pprc/phantom.hpp"
#include "pprc/sampling.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace pprc {

/// Square pixel grid centered at the origin. Pixel (i, j) has center
/// (-extent/2 + (i + 1/2) dx, -extent/2 + (j + 1/2) dy) and flat index j * nx + i.
struct ImageGrid {
  int nx = 0;
  int ny = 0;
  double extent = 70.0;
  std::vector<std::uint8_t> mask; ///< 1 for active pixels

  ImageGrid() = default;
  /// Grid with every pixel active.
  ImageGrid(int nx, int ny, double extent = 70.0);
  /// Grid whose mask marks the pixels lying entirely inside `domain`. Pixels
  /// cut by the boundary stay inactive, so no active footprint is clipped by
  /// a detector whose range is the ray range of the domain.
  ImageGrid(int nx, int ny, double extent, const ImageDomain &domain);

  double dx() const { return extent / nx; }
  double dy() const { return extent / ny; }
  double pixel_area() const { return dx() * dy(); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
  Vec2 center(int i, int j) const {
    return {-0.5 * extent + (i + 0.5) * dx(), -0.5 * extent + (j + 0.5) * dy()};
  }
  Vec2 center(std::size_t idx) const {
    return center(static_cast<int>(idx % nx), static_cast<int>(idx / nx));
  }
  std::size_t active_pixels() const;
};

/// Pixel-center samples of the phantom; masked-out pixels are 0.
std::vector<double> rasterize(const ImageGrid &grid, const Phantom &f);

/// Pixel-driven projector of a single view.
///
/// Each active pixel is reduced to its center c: ray parameter r = r(c), arc
/// parameter t = t(c). Its mass f * rho(t) * area * |det dgamma^-1/dx|(c) is
/// spread uniformly over the footprint [r - w/2, r + w/2], w = pixel width
/// transverse to the ray times the magnification |det dgamma^-1/dx|, and each
/// bin receives its overlapped share divided by the bin width. Bin values are
/// therefore bin averages of the projection. Footprint outside the detector
/// is dropped.
class ViewOperator {
public:
  ViewOperator(ViewGeometry view, const ImageGrid &image, DetectorGrid detector);

  const DetectorGrid &detector() const { return detector_; }
  const ViewGeometry &view() const { return view_; }

  /// out += A f. `out` has detector().size() entries.
  void forward_add(std::span<const double> f, std::span<double> out, int threads = 1) const;
  /// out = A^T g for every pixel (0 outside the mask).
  void adjoint(std::span<const double> g, std::span<double> out, int threads = 1) const;

  /// Dense row of coefficients for one pixel; for tests and small oracles.
  std::vector<double> pixel_column(std::size_t pixel) const;

private:
  struct Footprint {
    std::uint32_t pixel;
    double lo; ///< footprint start, in bin units relative to detector lo
    double hi;
    double scale; ///< coefficient per unit overlap (bin units)
  };
  template <class Visit> void for_bins(const Footprint &fp, Visit &&visit) const;

  ViewGeometry view_;
  DetectorGrid detector_;
  std::size_t image_size_;
  std::vector<Footprint> footprints_;
};

/// Stacked two-view operator: data vector [g1; g2].
class PairOperator {
public:
  /// Throws ConfigurationError if the pair fails check_pair_admissible.
  PairOperator(const PairGeometry &pg, ImageGrid image, DetectorGrid d1, DetectorGrid d2,
               int threads = 1);

  std::size_t rows() const { return first_.detector().size() + second_.detector().size(); }
  std::size_t cols() const { return image_.size(); }
  const ImageGrid &image() const { return image_; }
  const ViewOperator &first() const { return first_; }
  const ViewOperator &second() const { return second_; }

  void apply(std::span<const double> f, std::span<double> g) const;
  void apply_adjoint(std::span<const double> g, std::span<double> f) const;

  DataPair forward(std::span<const double> f) const;
  std::vector<double> adjoint(const DataPair &g) const;

private:
  ImageGrid image_;
  ViewOperator first_;
  ViewOperator second_;
  int threads_;
};

std::vector<double> stack(const DataPair &g);
DataPair unstack(std::span<const double> g, const DetectorGrid &d1, const DetectorGrid &d2);

} // namespace pprc
