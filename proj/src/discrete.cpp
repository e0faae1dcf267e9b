#include "pprc/discrete.hpp"

#include "pprc/errors.hpp"
#include "pprc/parallel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace pprc {

ImageGrid::ImageGrid(int nx_, int ny_, double extent_)
    : nx(nx_), ny(ny_), extent(extent_) {
  if (nx <= 0 || ny <= 0 || !(extent > 0.0))
    throw ConfigurationError("image grid needs positive pixel counts and extent");
  mask.assign(size(), 1);
}

ImageGrid::ImageGrid(int nx_, int ny_, double extent_, const ImageDomain &domain)
    : ImageGrid(nx_, ny_, extent_) {
  const double hx = 0.5 * dx();
  const double hy = 0.5 * dy();
  for (std::size_t p = 0; p < size(); ++p) {
    const Vec2 c = center(p);
    bool inside = domain.contains(c + Vec2{-hx, -hy}) && domain.contains(c + Vec2{hx, -hy}) &&
                  domain.contains(c + Vec2{hx, hy}) && domain.contains(c + Vec2{-hx, hy});
    for (Vec2 v : domain.vertices())
      if (inside && std::abs(v.x - c.x) < hx && std::abs(v.y - c.y) < hy)
        inside = false;
    mask[p] = inside ? 1 : 0;
  }
}

std::size_t ImageGrid::active_pixels() const {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), 1));
}

std::vector<double> rasterize(const ImageGrid &grid, const Phantom &f) {
  std::vector<double> img(grid.size(), 0.0);
  for (std::size_t p = 0; p < grid.size(); ++p)
    if (grid.mask[p])
      img[p] = f(grid.center(p));
  return img;
}

ViewOperator::ViewOperator(ViewGeometry view, const ImageGrid &image, DetectorGrid detector)
    : view_(std::move(view)), detector_(detector), image_size_(image.size()) {
  const double hx = image.dx();
  const double hy = image.dy();
  const double area = image.pixel_area();
  const double inv_step = 1.0 / detector_.step();
  const double mu = attenuation(view_);
  for (std::size_t p = 0; p < image.size(); ++p) {
    if (!image.mask[p])
      continue;
    const Vec2 c = image.center(p);
    const RayCoords rc = inverse(view_, c);
    double n_x, n_y, jac, w8;
    if (is_fan(view_)) {
      n_x = -std::sin(rc.r);
      n_y = std::cos(rc.r);
      jac = 1.0 / rc.t;
      w8 = mu == 0.0 ? 1.0 : std::exp(mu * rc.t);
    } else {
      const double th = std::get<ParGeometry>(view_).theta;
      n_x = std::cos(th);
      n_y = std::sin(th);
      jac = 1.0;
      w8 = 1.0;
    }
    const double width = std::sqrt(hx * hx * n_x * n_x + hy * hy * n_y * n_y) * jac;
    const double mid = (rc.r - detector_.lo) * inv_step;
    const double half = 0.5 * width * inv_step;
    if (mid + half <= 0.0 || mid - half >= detector_.n_bins)
      continue;
    // mass / (width * step) per unit overlap in r, i.e. mass / width per bin unit
    const double mass = w8 * area * jac;
    footprints_.push_back(
        {static_cast<std::uint32_t>(p), mid - half, mid + half, mass * inv_step / (2.0 * half)});
  }
}

template <class Visit> void ViewOperator::for_bins(const Footprint &fp, Visit &&visit) const {
  const int n = detector_.n_bins;
  const int k0 = std::max(0, static_cast<int>(std::floor(fp.lo)));
  const int k1 = std::min(n - 1, static_cast<int>(std::floor(fp.hi)));
  for (int k = k0; k <= k1; ++k) {
    const double overlap = std::min<double>(fp.hi, k + 1) - std::max<double>(fp.lo, k);
    if (overlap > 0.0)
      visit(k, overlap * fp.scale);
  }
}

void ViewOperator::forward_add(std::span<const double> f, std::span<double> out,
                               int threads) const {
  if (f.size() != image_size_ || out.size() != detector_.size())
    throw ConfigurationError("ViewOperator::forward_add: size mismatch");
  // Fixed chunking keeps the summation order independent of the thread count.
  constexpr std::size_t kChunks = 64;
  const std::size_t n = footprints_.size();
  const std::size_t per = (n + kChunks - 1) / kChunks;
  std::vector<std::vector<double>> partial(kChunks);
  parallel_for(kChunks, threads, [&](std::size_t c) {
    auto &acc = partial[c];
    acc.assign(detector_.size(), 0.0);
    const std::size_t end = std::min(n, (c + 1) * per);
    for (std::size_t i = c * per; i < end; ++i) {
      const Footprint &fp = footprints_[i];
      const double v = f[fp.pixel];
      if (v == 0.0)
        continue;
      for_bins(fp, [&](int k, double a) { acc[k] += a * v; });
    }
  });
  for (const auto &acc : partial)
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] += acc[k];
}

void ViewOperator::adjoint(std::span<const double> g, std::span<double> out, int threads) const {
  if (g.size() != detector_.size() || out.size() != image_size_)
    throw ConfigurationError("ViewOperator::adjoint: size mismatch");
  std::fill(out.begin(), out.end(), 0.0);
  constexpr std::size_t kChunks = 64;
  const std::size_t n = footprints_.size();
  const std::size_t per = (n + kChunks - 1) / kChunks;
  parallel_for(kChunks, threads, [&](std::size_t c) {
    const std::size_t end = std::min(n, (c + 1) * per);
    for (std::size_t i = c * per; i < end; ++i) {
      const Footprint &fp = footprints_[i];
      double s = 0.0;
      for_bins(fp, [&](int k, double a) { s += a * g[k]; });
      out[fp.pixel] = s;
    }
  });
}

std::vector<double> ViewOperator::pixel_column(std::size_t pixel) const {
  std::vector<double> col(detector_.size(), 0.0);
  for (const auto &fp : footprints_)
    if (fp.pixel == pixel)
      for_bins(fp, [&](int k, double a) { col[k] += a; });
  return col;
}

PairOperator::PairOperator(const PairGeometry &pg, ImageGrid image, DetectorGrid d1,
                           DetectorGrid d2, int threads)
    : image_(std::move(image)), first_(pg.first, image_, d1), second_(pg.second, image_, d2),
      threads_(threads) {
  const auto rep = check_pair_admissible(pg);
  if (!rep.admissible)
    throw ConfigurationError(fmt::format("PairOperator: inadmissible {} geometry: {}",
                                         to_string(rep.kind),
                                         rep.failures.empty() ? "margin below threshold"
                                                              : rep.failures.front()));
}

void PairOperator::apply(std::span<const double> f, std::span<double> g) const {
  if (g.size() != rows())
    throw ConfigurationError("PairOperator::apply: size mismatch");
  std::fill(g.begin(), g.end(), 0.0);
  const std::size_t n1 = first_.detector().size();
  first_.forward_add(f, g.subspan(0, n1), threads_);
  second_.forward_add(f, g.subspan(n1), threads_);
}

void PairOperator::apply_adjoint(std::span<const double> g, std::span<double> f) const {
  if (g.size() != rows() || f.size() != cols())
    throw ConfigurationError("PairOperator::apply_adjoint: size mismatch");
  const std::size_t n1 = first_.detector().size();
  std::vector<double> tmp(cols());
  first_.adjoint(g.subspan(0, n1), f, threads_);
  second_.adjoint(g.subspan(n1), tmp, threads_);
  for (std::size_t p = 0; p < f.size(); ++p)
    f[p] += tmp[p];
}

DataPair PairOperator::forward(std::span<const double> f) const {
  std::vector<double> g(rows());
  apply(f, g);
  return unstack(g, first_.detector(), second_.detector());
}

std::vector<double> PairOperator::adjoint(const DataPair &g) const {
  std::vector<double> f(cols());
  apply_adjoint(stack(g), f);
  return f;
}

std::vector<double> stack(const DataPair &g) {
  std::vector<double> out(g.first.values);
  out.insert(out.end(), g.second.values.begin(), g.second.values.end());
  return out;
}

DataPair unstack(std::span<const double> g, const DetectorGrid &d1, const DetectorGrid &d2) {
  if (g.size() != d1.size() + d2.size())
    throw ConfigurationError("unstack: size mismatch");
  return {ProjectionData(d1, {g.begin(), g.begin() + d1.size()}),
          ProjectionData(d2, {g.begin() + d1.size(), g.end()})};
}

} // namespace pprc
