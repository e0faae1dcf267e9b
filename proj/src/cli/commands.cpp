#include "commands.hpp"

#include "pprc/consistency.hpp"
#include "pprc/discrete.hpp"
#include "pprc/errors.hpp"
#include "pprc/io.hpp"
#include "pprc/presets.hpp"
#include "pprc/projector.hpp"
#include "pprc/solver.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace pprc::cli {
namespace fs = std::filesystem;

namespace {

// Collects "key = value" lines, written to the report file and to stdout.
class Report {
public:
  template <class T> void add(const std::string &key, const T &value) {
    body_ << key << " = " << fmt::format("{}", value) << '\n';
  }
  void add_num(const std::string &key, double v) { add(key, fmt::format("{:.17g}", v)); }
  void emit(const CommandContext &ctx, const std::string &file) const {
    std::ofstream f(ctx.out_dir / file);
    f << body_.str();
    *ctx.out << body_.str();
  }

private:
  std::ostringstream body_;
};

void prepare_out(const ExperimentConfig &cfg, const CommandContext &ctx) {
  fs::create_directories(ctx.out_dir);
  std::ofstream echo(ctx.out_dir / "config.ini");
  if (!cfg.text.empty())
    echo << cfg.text;
  else
    echo << "# no config file given; built-in defaults\n";
}

std::pair<DetectorGrid, DetectorGrid> grids(const ExperimentConfig &cfg) {
  return {presets::view_grid(cfg.geometry, 1, cfg.bins),
          presets::view_grid(cfg.geometry, 2, cfg.bins)};
}

double center2(const ExperimentConfig &cfg) {
  return central_parameter(cfg.geometry.second, cfg.geometry.domain);
}

DataPair target_data(const ExperimentConfig &cfg, const CommandContext &ctx) {
  auto [d1, d2] = grids(cfg);
  switch (cfg.phantom_source) {
  case PhantomSource::zero:
    return {ProjectionData(d1), ProjectionData(d2)};
  case PhantomSource::inconceivable:
    return inconceivable_target(d1, d2, center2(cfg));
  default:
    break;
  }
  const Phantom f = make_phantom(cfg);
  if (cfg.discrete_projection) {
    const PairOperator A(cfg.geometry, ImageGrid(cfg.image, cfg.image, cfg.extent, cfg.geometry.domain),
                         d1, d2, ctx.threads);
    return A.forward(rasterize(A.image(), f));
  }
  return {project_view(cfg.geometry.first, f, d1, {}, ctx.threads),
          project_view(cfg.geometry.second, f, d2, {}, ctx.threads)};
}

double l2(std::span<const double> v) { return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0)); }

} // namespace

int cmd_project(const ExperimentConfig &cfg, const CommandContext &ctx) {
  prepare_out(cfg, ctx);
  const DataPair g = target_data(cfg, ctx);
  io::write_projection_csv(ctx.out_dir / "projection_1.csv", g.first);
  io::write_projection_csv(ctx.out_dir / "projection_2.csv", g.second);
  Report r;
  r.add("command", "project");
  r.add("geometry", to_string(cfg.geometry.kind()));
  r.add("mode", cfg.phantom_source == PhantomSource::inconceivable || cfg.phantom_source == PhantomSource::zero
                    ? "data"
                    : (cfg.discrete_projection ? "discrete" : "continuous"));
  r.add("bins", cfg.bins);
  r.add_num("norm_first", l2(g.first.values));
  r.add_num("norm_second", l2(g.second.values));
  r.add("files", "projection_1.csv projection_2.csv");
  r.emit(ctx, "project_report.txt");
  return kOk;
}

int cmd_check(const ExperimentConfig &cfg, const CommandContext &ctx) {
  prepare_out(cfg, ctx);
  Report r;
  r.add("command", "check");
  r.add("geometry", to_string(cfg.geometry.kind()));
  const auto adm = check_pair_admissible(cfg.geometry);
  r.add("admissible", adm.admissible);
  r.add_num("margin", adm.margin);
  const auto k = known_kernels(cfg.geometry);
  if (!k) {
    r.add("kernels", "none");
    r.add("verdict", "no_kernels");
    r.add("message", "no pair of projection kernels exists for an exponential fanbeam pair with "
                     "mu != 0, so no range condition can be checked (the range is dense)");
    r.emit(ctx, "check_report.txt");
    return kNoKernels;
  }
  DataPair g;
  if (cfg.check_first || cfg.check_second) {
    if (!cfg.check_first || !cfg.check_second)
      throw ConfigurationError("check.first and check.second must be given together");
    g = {io::read_projection_csv(*cfg.check_first), io::read_projection_csv(*cfg.check_second)};
  } else {
    g = target_data(cfg, ctx);
  }
  const PprcTerms t = pprc_terms(g, *k);
  const double denom = std::max(std::abs(t.first), std::abs(t.second));
  const double rel = denom > 0.0 ? std::abs(t.residual()) / denom : 0.0;
  const bool ok = rel < cfg.check_tolerance;
  r.add("kernels", k->name);
  r.add_num("integral_first", t.first);
  r.add_num("integral_second", t.second);
  r.add_num("residual", t.residual());
  r.add_num("relative_residual", rel);
  r.add_num("tolerance", cfg.check_tolerance);
  r.add("verdict", ok ? "consistent" : "inconsistent");
  r.emit(ctx, "check_report.txt");
  return ok ? kOk : kInconsistent;
}

int cmd_separability(const ExperimentConfig &cfg, const CommandContext &ctx) {
  prepare_out(cfg, ctx);
  const PairGeometry &pg = cfg.geometry;
  std::function<double(double, double)> L;
  std::vector<double> extra1, extra2;
  const bool fanfan = pg.kind() == PairKind::fan_fan;
  Vec2 dl{};
  double mu = 0.0;
  if (fanfan) {
    const auto &f1 = std::get<FanGeometry>(pg.first);
    const auto &f2 = std::get<FanGeometry>(pg.second);
    dl = f2.vertex - f1.vertex;
    mu = f1.mu;
    if (f1.mu != f2.mu)
      throw ConfigurationError("separability: both fans must share the same mu");
    const auto tup = counterexample_tuple(f1.theta0);
    extra1 = {tup[0], tup[1]};
    extra2 = {tup[2], tup[3]};
  }
  if (cfg.sep_function == "full") {
    L = [&pg](double a, double b) { return kernel_lhs_log(pg, a, b); };
  } else if (cfg.sep_function == "normalized") {
    if (!fanfan)
      throw ConfigurationError("separability.function = normalized needs a fan-fan pair");
    const Vec2 l1 = std::get<FanGeometry>(pg.first).vertex;
    const Vec2 l2v = std::get<FanGeometry>(pg.second).vertex;
    L = [=](double a, double b) { return expo_lhs_log(a, b, mu, l1, l2v); };
  } else {
    L = [](double a, double b) { return std::sin(3.0 * a) + b * b; };
  }
  const SampledSurface s = sample_surface(pg, cfg.sep_n1, cfg.sep_n2, L, extra1, extra2);
  SeparabilityOptions opt;
  opt.threads = ctx.threads;
  const SeparabilityReport rep = separability_test(s, opt);

  Report r;
  r.add("command", "separability");
  r.add("function", cfg.sep_function);
  r.add("grid", fmt::format("{}x{}", s.r1.size(), s.r2.size()));
  r.add("quadruples", rep.quadruples);
  r.add_num("max_abs_D", rep.max_abs_D);
  r.add("argmax", fmt::format("{:.17g} {:.17g} {:.17g} {:.17g}", rep.argmax[0], rep.argmax[1],
                              rep.argmax[2], rep.argmax[3]));
  r.add_num("scale", rep.scale);
  r.add_num("threshold", rep.threshold);
  r.add("verdict", rep.separable ? "separable" : "non-separable");
  if (fanfan) {
    const Vec2 pdl = perp(dl);
    const double th = std::atan2(pdl.y, pdl.x);
    const auto tup = counterexample_tuple(th);
    const double g = eval_G(tup[0], tup[1], tup[2], tup[3], mu, dl);
    r.add_num("mu", mu);
    r.add_num("G_counterexample", g);
    r.add_num("G_over_mu_norm_dlambda", mu != 0.0 ? g / (mu * norm(dl)) : 0.0);
    r.add_num("quoted_constant", quoted_G_constant());
  }
  r.emit(ctx, "separability_report.txt");
  return kOk;
}

namespace {

// Iterate values along the central ray of a view, sampled every half pixel.
void write_profile(const fs::path &path, const ViewGeometry &v, const ImageDomain &dom,
                   const ImageGrid &grid, std::span<const double> img) {
  const double rc = central_parameter(v, dom);
  Vec2 origin, dir;
  double tmin;
  if (const auto *f = std::get_if<FanGeometry>(&v)) {
    origin = f->vertex;
    dir = direction(rc);
    tmin = 0.0;
  } else {
    const double th = std::get<ParGeometry>(v).theta;
    origin = rc * direction(th);
    dir = normal(th);
    tmin = -std::numeric_limits<double>::infinity();
  }
  std::vector<double> ts, vals;
  const double step = 0.5 * std::min(grid.dx(), grid.dy());
  for (auto [a, b] : dom.chord(origin, dir, tmin)) {
    for (double t = a + 0.5 * step; t < b; t += step) {
      const Vec2 x = origin + t * dir;
      const int i = static_cast<int>(std::floor((x.x + 0.5 * grid.extent) / grid.dx()));
      const int j = static_cast<int>(std::floor((x.y + 0.5 * grid.extent) / grid.dy()));
      if (i < 0 || j < 0 || i >= grid.nx || j >= grid.ny)
        continue;
      ts.push_back(t);
      vals.push_back(img[grid.index(i, j)]);
    }
  }
  io::write_columns_csv(path, "t", "value", ts, vals);
}

} // namespace

int cmd_solve(const ExperimentConfig &cfg, const CommandContext &ctx) {
  prepare_out(cfg, ctx);
  auto [d1, d2] = grids(cfg);
  const PairOperator A(cfg.geometry,
                       ImageGrid(cfg.image, cfg.image, cfg.extent, cfg.geometry.domain), d1, d2,
                       ctx.threads);
  const DataPair target = target_data(cfg, ctx);
  const std::vector<double> g = stack(target);
  CgneOptions opt;
  opt.max_iter = cfg.max_iter;
  opt.tol = cfg.tol;
  opt.callback_every = 100;
  opt.callback = [&](const CgneProgress &p) {
    fmt::print(*ctx.err, "iteration {} relative residual {:.6e}\n", p.iteration,
               p.relative_residual);
  };
  const CgneState st = cgne_solve(A, g, opt);

  io::write_history_csv(ctx.out_dir / "residual_history.csv", st.residual_history);
  io::write_image(ctx.out_dir / "iterate.img", A.image(), st.iterate);
  io::write_pgm(ctx.out_dir / "iterate.pgm", A.image().nx, A.image().ny, st.iterate);
  write_profile(ctx.out_dir / "profile_L1.csv", cfg.geometry.first, cfg.geometry.domain,
                A.image(), st.iterate);
  write_profile(ctx.out_dir / "profile_L2.csv", cfg.geometry.second, cfg.geometry.domain,
                A.image(), st.iterate);

  Report r;
  r.add("command", "solve");
  r.add("image", fmt::format("{}x{}", cfg.image, cfg.image));
  r.add("bins", fmt::format("2x{}", cfg.bins));
  r.add_num("mu", attenuation(cfg.geometry.first));
  r.add("iterations", st.iterations);
  r.add("stop_reason", to_string(st.reason));
  r.add_num("final_relative_residual", st.residual_history.back());
  r.add_num("iterate_norm", l2(st.iterate));
  if (const auto k = known_kernels(cfg.geometry); k && l2(g) > 0.0) {
    const double floor = predicted_residual_floor(target, *k) / l2(g);
    r.add_num("predicted_floor_relative", floor);
    r.add("stalled_above_half_floor", st.residual_history.back() >= 0.5 * floor);
  }
  r.add("files", "residual_history.csv iterate.img iterate.pgm profile_L1.csv profile_L2.csv");
  r.emit(ctx, "solve_report.txt");
  return kOk;
}

int cmd_verify(const ExperimentConfig &cfg, const CommandContext &ctx) {
  prepare_out(cfg, ctx);
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  int failures = 0;
  std::ostringstream log;
  auto check = [&](const std::string &name, bool ok, const std::string &detail) {
    log << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
    failures += ok ? 0 : 1;
  };
  const PairGeometry pg = cfg.geometry;
  const ImageDomain &dom = pg.domain;
  const Vec2 lo = dom.bbox_min(), hi = dom.bbox_max();
  auto random_point = [&] {
    for (;;) {
      const Vec2 x{lo.x + unit(rng) * (hi.x - lo.x), lo.y + unit(rng) * (hi.y - lo.y)};
      if (dom.contains(x))
        return x;
    }
  };

  {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Vec2 x = random_point();
      for (const ViewGeometry *v : {&pg.first, &pg.second}) {
        const RayCoords c = inverse(*v, x);
        worst = std::max(worst, norm(point(*v, c.r, c.t) - x) / dom.diameter());
      }
    }
    check("round_trip", worst < 1e-12, fmt::format("max relative error {:.3e}", worst));
  }
  {
    const auto adm = check_pair_admissible(pg);
    check("admissible", adm.admissible, fmt::format("margin {:.6g}", adm.margin));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const Vec2 x = random_point();
      const Vec2 y = pg.intersection(inverse(pg.first, x).r, inverse(pg.second, x).r);
      worst = std::max(worst, norm(x - y));
    }
    check("intersection_identity", worst < 1e-10, fmt::format("max error {:.3e} cm", worst));
  }
  {
    auto [d1, d2] = std::pair{presets::view_grid(pg, 1, 16), presets::view_grid(pg, 2, 16)};
    const PairOperator A(pg, ImageGrid(32, 32, cfg.extent, dom), d1, d2, ctx.threads);
    double worst = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> f(A.cols()), g(A.rows()), Af(A.rows()), Atg(A.cols());
      for (auto &v : f)
        v = unit(rng) - 0.5;
      for (auto &v : g)
        v = unit(rng) - 0.5;
      A.apply(f, Af);
      A.apply_adjoint(g, Atg);
      const double a = std::inner_product(Af.begin(), Af.end(), g.begin(), 0.0);
      const double b = std::inner_product(f.begin(), f.end(), Atg.begin(), 0.0);
      worst = std::max(worst, std::abs(a - b) / std::max(std::abs(a), std::abs(b)));
    }
    check("adjoint_identity", worst < 1e-12, fmt::format("max relative gap {:.3e}", worst));
  }
  if (const auto k = known_kernels(pg)) {
    const auto samples = sample_intersecting_set(pg, 10000);
    const double res = kernel_condition_residual(pg, *k, samples);
    check("kernel_condition", res < 1e-12,
          fmt::format("{} over {} samples: {:.3e}", k->name, samples.size(), res));
    const Phantom f = random_phantom(dom, 3, cfg.seed);
    auto [d1, d2] = std::pair{presets::view_grid(pg, 1, 400), presets::view_grid(pg, 2, 400)};
    const DataPair g{project_view(pg.first, f, d1, {}, ctx.threads),
                     project_view(pg.second, f, d2, {}, ctx.threads)};
    const PprcTerms t = pprc_terms(g, *k);
    const double rel = std::abs(t.residual()) / std::max(std::abs(t.first), std::abs(t.second));
    check("pprc_necessity", rel < 1e-6, fmt::format("relative residual {:.3e}", rel));
  } else if (pg.kind() == PairKind::fan_fan) {
    const auto &f1 = std::get<FanGeometry>(pg.first);
    const auto &f2 = std::get<FanGeometry>(pg.second);
    const Vec2 dl = f2.vertex - f1.vertex;
    const Vec2 pdl = perp(dl);
    const double th = std::atan2(pdl.y, pdl.x);
    auto L = [&](double x, double y) { return expo_lhs_log(x, y, f1.mu, f1.vertex, f2.vertex); };
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
      // four angles in (th + pi/2, th + 3pi/2); the larger two belong to the first view
      std::array<double, 4> r;
      for (double &x : r)
        x = th + 0.5 * kPi + unit(rng) * kPi;
      std::sort(r.begin(), r.end());
      const double D = L(r[3], r[0]) - L(r[2], r[0]) - L(r[3], r[1]) + L(r[2], r[1]);
      worst = std::max(worst, std::abs(D - eval_G(r[3], r[2], r[0], r[1], f1.mu, dl)));
    }
    check("G_consistency", worst < 1e-12, fmt::format("max gap {:.3e}", worst));
  }
  {
    const Phantom f = random_phantom(dom, 3, cfg.seed + 1);
    for (const ViewGeometry *v : {&pg.first, &pg.second}) {
      const auto cb = continuity_bound_check(*v, dom, f);
      check("continuity_bound", cb.holds(),
            fmt::format("{}: |Pf| {:.6g} <= c|f| {:.6g}", describe(*v), cb.lhs, cb.rhs));
    }
  }
  {
    const MatrixOperator D(2, 2, {1, 0, 0, 2});
    const std::vector<double> g{1, 2};
    CgneOptions o;
    o.tol = 1e-15;
    const auto st = cgne_solve(D, g, o);
    const double err = std::hypot(st.iterate[0] - 1, st.iterate[1] - 1);
    check("cgne_diagonal", err < 1e-14 && st.iterations <= 2,
          fmt::format("error {:.3e} after {} iterations", err, st.iterations));
  }
  std::ofstream(ctx.out_dir / "verify_report.txt") << log.str();
  *ctx.out << log.str() << fmt::format("failures = {}\n", failures);
  return failures == 0 ? kOk : kInconsistent;
}

} // namespace pprc::cli
