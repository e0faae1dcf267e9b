#include "pprc/consistency.hpp"

#include "pprc/errors.hpp"
#include "pprc/parallel.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <tuple>

namespace pprc {

KernelPair KernelPair::scaled(double c) const {
  KernelPair k = *this;
  k.first = [f = first, c](double r) { return c * f(r); };
  k.second = [f = second, c](double r) { return c * f(r); };
  k.sign = c < 0.0 ? -sign : sign;
  return k;
}

std::optional<KernelPair> known_kernels(const PairGeometry &pg) {
  const auto rep = check_pair_admissible(pg);
  if (!rep.admissible)
    throw ConfigurationError(fmt::format("known_kernels: inadmissible {} geometry: {}",
                                         to_string(rep.kind),
                                         rep.failures.empty() ? "margin below threshold"
                                                              : rep.failures.front()));
  if (attenuation(pg.first) != 0.0 || attenuation(pg.second) != 0.0)
    return std::nullopt;

  KernelPair k;
  switch (pg.kind()) {
  case PairKind::par_par:
    k.first = [](double) { return 1.0; };
    k.second = [](double) { return 1.0; };
    k.name = "zero moment (V1 = V2 = 1)";
    break;
  case PairKind::par_fan: {
    const Vec2 u = direction(std::get<ParGeometry>(pg.first).theta);
    const double s = dot(std::get<FanGeometry>(pg.second).vertex, u);
    k.first = [s](double r1) { return 1.0 / (r1 - s); };
    k.second = [u](double r2) { return 1.0 / dot(u, direction(r2)); };
    k.name = "parallel-fanbeam (V1 = 1/(r1 - lambda.u), V2 = 1/(u.dir(r2)))";
    break;
  }
  case PairKind::fan_par: {
    const Vec2 u = direction(std::get<ParGeometry>(pg.second).theta);
    const double s = dot(std::get<FanGeometry>(pg.first).vertex, u);
    k.first = [u](double r1) { return 1.0 / dot(u, direction(r1)); };
    k.second = [s](double r2) { return 1.0 / (r2 - s); };
    k.name = "fanbeam-parallel (V1 = 1/(u.dir(r1)), V2 = 1/(r2 - lambda.u))";
    break;
  }
  case PairKind::fan_fan: {
    const Vec2 dl = std::get<FanGeometry>(pg.second).vertex - std::get<FanGeometry>(pg.first).vertex;
    k.first = [dl](double r) { return 1.0 / dot(normal(r), dl); };
    k.second = k.first;
    k.name = "fanbeam (V_i = 1/(normal(r_i).dlambda))";
    break;
  }
  }
  const double v = k.first(central_parameter(pg.first, pg.domain));
  k.sign = v < 0.0 ? -1 : 1;
  return k;
}

namespace {

double trapezoid(const ProjectionData &d, const std::function<double(double)> &V,
                 std::size_t offset) {
  const auto &g = d.values;
  const std::size_t n = g.size();
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (g[k] == 0.0)
      continue;
    const double v = V(d.grid.sample(static_cast<int>(k)));
    if (!std::isfinite(v))
      throw EvaluationError("non-finite kernel value", offset + k);
    s += (k == 0 || k + 1 == n ? 0.5 : 1.0) * g[k] * v;
  }
  return s * d.grid.step();
}

} // namespace

PprcTerms pprc_terms(const DataPair &g, const KernelPair &k) {
  return {trapezoid(g.first, k.first, 0), trapezoid(g.second, k.second, g.first.values.size())};
}

double pprc_residual(const DataPair &g, const KernelPair &k) { return pprc_terms(g, k).residual(); }

namespace {

// Weight and inverse-map determinant of one view at x, requiring x to be on
// the forward part of the ray r.
double view_factor(const ViewGeometry &v, double r, Vec2 x) {
  if (const auto *f = std::get_if<FanGeometry>(&v)) {
    const double t = dot(x - f->vertex, direction(r));
    if (!(t > 0.0))
      throw DomainError("ray pair meets behind a fan vertex");
    return weight(v, t) * fan_jacobian_inv(*f, x);
  }
  return 1.0;
}

} // namespace

double kernel_condition_lhs(const PairGeometry &pg, double r1, double r2) {
  const Vec2 x = pg.intersection(r1, r2);
  if (!pg.domain.contains(x))
    throw DomainError(fmt::format("({}, {}) is outside the intersecting set", r1, r2));
  return view_factor(pg.first, r1, x) / view_factor(pg.second, r2, x);
}

double kernel_lhs_log(const PairGeometry &pg, double r1, double r2) {
  const Vec2 x = pg.intersection(r1, r2);
  if (!pg.domain.contains(x))
    throw DomainError(fmt::format("({}, {}) is outside the intersecting set", r1, r2));
  double l = 0.0;
  for (int i = 0; i < 2; ++i) {
    const ViewGeometry &v = i == 0 ? pg.first : pg.second;
    const double r = i == 0 ? r1 : r2;
    const double sgn = i == 0 ? 1.0 : -1.0;
    if (const auto *f = std::get_if<FanGeometry>(&v)) {
      const double t = dot(x - f->vertex, direction(r));
      if (!(t > 0.0))
        throw DomainError("ray pair meets behind a fan vertex");
      l += sgn * (f->mu * t - std::log(norm(x - f->vertex)));
    }
  }
  return l;
}

std::vector<std::pair<double, double>> sample_intersecting_set(const PairGeometry &pg,
                                                               std::size_t min_count) {
  const Vec2 lo = pg.domain.bbox_min();
  const Vec2 hi = pg.domain.bbox_max();
  std::vector<std::pair<double, double>> out;
  int n = std::max(8, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(min_count)))));
  for (;;) {
    out.clear();
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        const Vec2 x{lo.x + (i + 0.5) * (hi.x - lo.x) / n, lo.y + (j + 0.5) * (hi.y - lo.y) / n};
        if (!pg.domain.contains(x))
          continue;
        out.emplace_back(inverse(pg.first, x).r, inverse(pg.second, x).r);
      }
    if (out.size() >= min_count)
      return out;
    n = static_cast<int>(std::ceil(n * std::sqrt(1.1 * min_count / std::max<double>(1, out.size()))));
  }
}

double kernel_condition_residual(const PairGeometry &pg, const KernelPair &k,
                                 const std::vector<std::pair<double, double>> &samples) {
  double worst = 0.0;
  for (const auto &[r1, r2] : samples) {
    const double lhs = kernel_condition_lhs(pg, r1, r2);
    const double rhs = k.second(r2) / k.first(r1);
    worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
  }
  return worst;
}

namespace {

struct PvSide {
  bool singular = false;
  double s = 0.0;
  double regular = 0.0;    // trapezoid value when not singular
  std::vector<double> q;   // g (r - s) V at the nodes
};

// Integral of the linear interpolant through (a, qa), (b, qb) against 1/(r - s)
// over [u, v], a subinterval of [a, b] not containing s.
double segment_pv(double a, double b, double qa, double qb, double s, double u, double v) {
  const double m = (qb - qa) / (b - a);
  const double qs = qa + m * (s - a);
  return qs * std::log(std::abs((v - s) / (u - s))) + m * (v - u);
}

double side_value(const PvSide &side, const DetectorGrid &grid, double eps) {
  if (!side.singular)
    return side.regular;
  const double s = side.s;
  double total = 0.0;
  for (int k = 0; k + 1 < grid.n_bins; ++k) {
    const double a = grid.sample(k);
    const double b = grid.sample(k + 1);
    if (a < s - eps)
      total += segment_pv(a, b, side.q[k], side.q[k + 1], s, a, std::min(b, s - eps));
    if (b > s + eps)
      total += segment_pv(a, b, side.q[k], side.q[k + 1], s, std::max(a, s + eps), b);
  }
  return total;
}

// `sing` lists candidate singular points of V; `reg` is (r - s) V, finite at s.
PvSide make_side(const ProjectionData &d, const std::function<double(double)> &V,
                 const std::vector<double> &sing, const std::function<double(double, double)> &reg,
                 const char *name) {
  PvSide side;
  const auto &grid = d.grid;
  for (double s : sing) {
    if (s < grid.lo || s > grid.hi)
      continue;
    const double first = grid.sample(0);
    const double last = grid.sample(grid.n_bins - 1);
    if (s <= first || s >= last)
      throw ResolutionError(fmt::format(
          "{} view: singular point {} lies in an outer half bin of the data grid", name, s));
    const double u = (s - grid.lo) / grid.step() - 0.5;
    if (std::abs(u - std::round(u)) < 1e-9)
      throw ResolutionError(
          fmt::format("{} view: singular point {} coincides with a grid node", name, s));
    side.singular = true;
    side.s = s;
    side.q.resize(grid.size());
    for (int k = 0; k < grid.n_bins; ++k)
      side.q[k] = d.values[k] * reg(grid.sample(k), s);
    return side;
  }
  side.regular = trapezoid(d, V, 0);
  return side;
}

double nearest_node_distance(const DetectorGrid &grid, double s) {
  const double u = (s - grid.lo) / grid.step() - 0.5;
  return std::abs(u - std::round(u)) * grid.step();
}

} // namespace

PvResult pv_hilbert_residual(const DataPair &g, const PairGeometry &pg, std::vector<double> eps) {
  const PairKind kind = pg.kind();
  if (kind != PairKind::par_fan && kind != PairKind::fan_par)
    throw ConfigurationError("pv_hilbert_residual needs a parallel-fanbeam pair");
  const bool par_first = kind == PairKind::par_fan;
  const auto &par = std::get<ParGeometry>(par_first ? pg.first : pg.second);
  const auto &fan = std::get<FanGeometry>(par_first ? pg.second : pg.first);
  const Vec2 u = direction(par.theta);
  const double s_par = dot(fan.vertex, u);

  auto Vpar = [s_par](double r) { return 1.0 / (r - s_par); };
  auto Vfan = [u](double r) { return 1.0 / dot(u, direction(r)); };
  auto reg_par = [](double, double) { return 1.0; };
  auto reg_fan = [u](double r, double s) { return (r - s) / dot(u, direction(r)); };

  // dot(u, direction(r)) = cos(r - theta) vanishes at theta + pi/2 + k pi.
  const ProjectionData &dfan = par_first ? g.second : g.first;
  std::vector<double> fan_sing;
  const double base = par.theta + 0.5 * kPi;
  const int k0 = static_cast<int>(std::floor((dfan.grid.lo - base) / kPi)) - 1;
  for (int k = k0; k <= k0 + 3; ++k)
    fan_sing.push_back(base + k * kPi);

  const PvSide par_side = make_side(par_first ? g.first : g.second, Vpar, {s_par}, reg_par,
                                    par_first ? "first" : "second");
  const PvSide fan_side = make_side(dfan, Vfan, fan_sing, reg_fan, par_first ? "second" : "first");

  const PvSide &s1 = par_first ? par_side : fan_side;
  const PvSide &s2 = par_first ? fan_side : par_side;

  PvResult res;
  res.first_singular = s1.singular;
  res.second_singular = s2.singular;
  res.first_singularity = s1.s;
  res.second_singularity = s2.s;

  if (eps.empty()) {
    double d = std::numeric_limits<double>::infinity();
    if (s1.singular)
      d = std::min(d, nearest_node_distance(g.first.grid, s1.s));
    if (s2.singular)
      d = std::min(d, nearest_node_distance(g.second.grid, s2.s));
    if (!std::isfinite(d))
      d = std::min(g.first.grid.step(), g.second.grid.step());
    eps = {0.25 * d, 0.125 * d, 0.0625 * d};
  }
  for (std::size_t i = 0; i + 1 < eps.size(); ++i)
    if (!(eps[i + 1] < eps[i]) || !(eps[i + 1] > 0.0))
      throw ConfigurationError("pv_hilbert_residual: eps must be positive and decreasing");

  res.eps = eps;
  for (double e : eps)
    res.residuals.push_back(side_value(s1, g.first.grid, e) - side_value(s2, g.second.grid, e));

  const std::size_t n = res.residuals.size();
  if (n == 1) {
    res.extrapolated = res.residuals[0];
  } else {
    auto rich = [&](std::size_t i, int order) {
      const double q = std::pow(eps[i] / eps[i + 1], order);
      return (q * res.residuals[i + 1] - res.residuals[i]) / (q - 1.0);
    };
    if (n == 2) {
      res.extrapolated = rich(0, 1);
    } else {
      const double a = rich(n - 3, 1);
      const double b = rich(n - 2, 1);
      // second-order step on the two first-order estimates
      const double q2 = (eps[n - 3] / eps[n - 2]) * (eps[n - 3] / eps[n - 2]);
      res.extrapolated = (q2 * b - a) / (q2 - 1.0);
    }
  }
  return res;
}

namespace {

double lhs_term(double a, double b, Vec2 dl) {
  const double den = dot(normal(a), direction(b));
  if (std::abs(den) < kParallelThreshold)
    throw DomainError(fmt::format("normal({}) . direction({}) vanishes", a, b));
  return dot(normal(a) - normal(b), dl) / den;
}

} // namespace

double eval_G(double r1, double r1t, double r2, double r2t, double mu, Vec2 delta_lambda) {
  const double t = lhs_term(r1, r2, delta_lambda) - lhs_term(r1t, r2, delta_lambda) -
                   lhs_term(r1, r2t, delta_lambda) + lhs_term(r1t, r2t, delta_lambda);
  return mu * t;
}

double expo_lhs_log(double r1, double r2, double mu, Vec2 lambda1, Vec2 lambda2) {
  return mu * lhs_term(r1, r2, lambda2 - lambda1);
}

std::array<double, 4> counterexample_tuple(double theta0) {
  return {theta0 + kPi + kPi / 4.0, theta0 + kPi + kPi / 6.0, theta0 + kPi,
          theta0 + kPi - kPi / 6.0};
}

double quoted_G_constant() {
  return -8.0 - std::sqrt(2.0) + 4.0 * std::sqrt(3.0) + std::sqrt(6.0);
}

namespace {

std::vector<double> merged_samples(Interval range, int n, std::vector<double> extra) {
  std::vector<double> r;
  r.reserve(n + extra.size());
  for (int k = 0; k < n; ++k)
    r.push_back(range.lo + (k + 0.5) * range.width() / n);
  r.insert(r.end(), extra.begin(), extra.end());
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  return r;
}

} // namespace

SampledSurface sample_surface(const PairGeometry &pg, int n1, int n2,
                              const std::function<double(double, double)> &L,
                              std::vector<double> extra_r1, std::vector<double> extra_r2) {
  SampledSurface s;
  s.r1 = merged_samples(ray_range(pg.first, pg.domain), n1, std::move(extra_r1));
  s.r2 = merged_samples(ray_range(pg.second, pg.domain), n2, std::move(extra_r2));
  s.values.assign(s.r1.size() * s.r2.size(), 0.0);
  s.valid.assign(s.values.size(), 0);
  for (std::size_t i = 0; i < s.r1.size(); ++i)
    for (std::size_t j = 0; j < s.r2.size(); ++j) {
      const std::size_t idx = i * s.r2.size() + j;
      try {
        const Vec2 x = pg.intersection(s.r1[i], s.r2[j]);
        if (!pg.domain.contains(x))
          continue;
        view_factor(pg.first, s.r1[i], x);
        view_factor(pg.second, s.r2[j], x);
        const double v = L(s.r1[i], s.r2[j]);
        if (!std::isfinite(v))
          continue;
        s.values[idx] = v;
        s.valid[idx] = 1;
      } catch (const DomainError &) {
      }
    }
  return s;
}

SeparabilityReport separability_test(const SampledSurface &L, const SeparabilityOptions &opt) {
  using Pair = std::pair<std::uint32_t, std::uint32_t>;
  auto pairs = [](std::size_t n) {
    std::vector<Pair> p;
    for (std::uint32_t a = 0; a < n; ++a)
      for (std::uint32_t b = a + 1; b < n; ++b)
        p.emplace_back(a, b);
    return p;
  };
  std::vector<Pair> p1 = pairs(L.r1.size());
  std::vector<Pair> p2 = pairs(L.r2.size());
  const double total = static_cast<double>(p1.size()) * static_cast<double>(p2.size());
  if (total > static_cast<double>(opt.max_quadruples)) {
    const auto stride = static_cast<std::size_t>(
        std::ceil(std::sqrt(total / static_cast<double>(opt.max_quadruples))));
    auto thin = [stride](std::vector<Pair> &p) {
      std::vector<Pair> q;
      for (std::size_t i = 0; i < p.size(); i += stride)
        q.push_back(p[i]);
      p.swap(q);
    };
    thin(p1);
    thin(p2);
  }

  SeparabilityReport rep;
  for (std::size_t k = 0; k < L.values.size(); ++k)
    if (L.valid[k])
      rep.scale = std::max(rep.scale, std::abs(L.values[k]));
  rep.threshold =
      opt.relative_threshold >= 0.0 ? opt.relative_threshold * rep.scale : opt.absolute_threshold;

  struct Best {
    double d = -1.0;
    std::array<std::uint32_t, 4> idx{};
    std::size_t count = 0;
  };
  constexpr std::size_t kChunks = 64;
  std::vector<Best> best(kChunks);
  const std::size_t per = (p1.size() + kChunks - 1) / kChunks;
  parallel_for(kChunks, opt.threads, [&](std::size_t c) {
    Best &b = best[c];
    const std::size_t end = std::min(p1.size(), (c + 1) * per);
    for (std::size_t a = c * per; a < end; ++a) {
      const auto [i, ii] = p1[a];
      for (const auto &[j, jj] : p2) {
        if (!(L.ok(i, j) && L.ok(ii, j) && L.ok(i, jj) && L.ok(ii, jj)))
          continue;
        ++b.count;
        const double d = std::abs(L.at(i, j) - L.at(ii, j) - L.at(i, jj) + L.at(ii, jj));
        const std::array<std::uint32_t, 4> idx{i, ii, j, jj};
        if (d > b.d || (d == b.d && idx < b.idx)) {
          b.d = d;
          b.idx = idx;
        }
      }
    }
  });
  Best all;
  for (const auto &b : best) {
    all.count += b.count;
    if (b.count == 0)
      continue;
    if (b.d > all.d || (b.d == all.d && b.idx < all.idx)) {
      all.d = b.d;
      all.idx = b.idx;
    }
  }
  if (all.count == 0)
    throw DomainError("separability_test: no admissible quadruple in the sample set");
  rep.quadruples = all.count;
  rep.max_abs_D = all.d;
  rep.argmax = {L.r1[all.idx[0]], L.r1[all.idx[1]], L.r2[all.idx[2]], L.r2[all.idx[3]]};
  rep.separable = !(rep.max_abs_D > rep.threshold);
  return rep;
}

} // namespace pprc
