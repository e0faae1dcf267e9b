#pragma once

#include "pprc/errors.hpp"
#include "pprc/vec.hpp"

#include <cstddef>
#include <vector>

namespace pprc {

/// Uniform midpoint-aligned samples of an open ray-parameter interval (lo, hi).
/// Sample k sits at lo + (k + 1/2) * step; bin k covers [lo + k step, lo + (k + 1) step].
struct DetectorGrid {
  double lo = 0.0;
  double hi = 1.0;
  int n_bins = 400;

  DetectorGrid() = default;
  DetectorGrid(double lo_, double hi_, int n) : lo(lo_), hi(hi_), n_bins(n) {
    if (n < 2)
      throw ConfigurationError("detector grid needs at least two bins");
    if (!(hi > lo))
      throw ConfigurationError("detector grid needs hi > lo");
  }
  DetectorGrid(Interval range, int n) : DetectorGrid(range.lo, range.hi, n) {}

  double step() const { return (hi - lo) / n_bins; }
  double sample(int k) const { return lo + (k + 0.5) * step(); }
  std::vector<double> samples() const {
    std::vector<double> s(n_bins);
    for (int k = 0; k < n_bins; ++k)
      s[k] = sample(k);
    return s;
  }
  std::size_t size() const { return static_cast<std::size_t>(n_bins); }
};

struct ProjectionData {
  DetectorGrid grid;
  std::vector<double> values;

  ProjectionData() = default;
  explicit ProjectionData(DetectorGrid g) : grid(g), values(g.size(), 0.0) {}
  ProjectionData(DetectorGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
    if (values.size() != grid.size())
      throw ConfigurationError("projection data size does not match its detector grid");
  }
};

/// Data of both views of a projection pair.
struct DataPair {
  ProjectionData first;
  ProjectionData second;
};

} // namespace pprc
