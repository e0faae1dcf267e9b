#include "pprc/presets.hpp"

namespace pprc::presets {

ImageDomain experiment_domain() {
  std::vector<Vec2> poly{{-35, -35}, {35, -35}, {35, 35}, {-35, 35}};
  const double k = 5.0 / 12.0;
  poly = clip_half_plane(poly, {-k, 1.0}, k * 80.0);   // y < k (x + 80)
  poly = clip_half_plane(poly, {-k, -1.0}, k * 80.0);  // -y < k (x + 80)
  poly = clip_half_plane(poly, {1.0, k}, k * 80.0);    // x < k (80 - y)
  poly = clip_half_plane(poly, {-1.0, k}, k * 80.0);   // -x < k (80 - y)
  return ImageDomain::polygon(std::move(poly));
}

PairGeometry experiment_pair(double mu) {
  return make_fan_pair(kLambda1, kLambda2, mu, experiment_domain());
}

PairGeometry counterexample_pair(double mu) {
  return make_fan_pair({0.0, 0.0}, {0.0, -40.0}, mu, ImageDomain::disc({-44.0, -32.0}, 32.0));
}

DetectorGrid view_grid(const PairGeometry &pg, int view, int n_bins) {
  return DetectorGrid(ray_range(view == 1 ? pg.first : pg.second, pg.domain), n_bins);
}

} // namespace pprc::presets
