#include "config.hpp"

#include "pprc/errors.hpp"
#include "pprc/io.hpp"
#include "pprc/presets.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <fmt/format.h>

#include <fstream>
#include <sstream>

namespace pprc::cli {
namespace pt = boost::property_tree;

namespace {

template <class T> T get_or(const pt::ptree &t, const std::string &key, T fallback) {
  const auto node = t.get_child_optional(key);
  if (!node)
    return fallback;
  try {
    return node->get_value<T>();
  } catch (const pt::ptree_bad_data &) {
    throw ConfigurationError(fmt::format("config key '{}': cannot parse '{}'", key,
                                         node->get_value<std::string>()));
  }
}

void require_positive(int v, const char *key) {
  if (v <= 0)
    throw ConfigurationError(fmt::format("config key '{}' must be positive, got {}", key, v));
}

void set_mu(PairGeometry &pg, double mu) {
  for (ViewGeometry *v : {&pg.first, &pg.second})
    if (auto *f = std::get_if<FanGeometry>(v))
      f->mu = mu;
}

} // namespace

ExperimentConfig default_config() {
  ExperimentConfig c;
  c.geometry = presets::experiment_pair();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigurationError(fmt::format("config file '{}' does not exist or is unreadable",
                                         path.string()));
  std::stringstream ss;
  ss << in.rdbuf();
  ExperimentConfig c = default_config();
  c.source = path;
  c.text = ss.str();

  pt::ptree t;
  try {
    std::istringstream is(c.text);
    pt::read_ini(is, t);
  } catch (const pt::ini_parser_error &e) {
    throw ConfigurationError(fmt::format("{}: {}", path.string(), e.message()));
  }
  const auto base = path.parent_path();
  auto resolve = [&](const std::string &p) {
    std::filesystem::path q(p);
    return q.is_absolute() ? q : base / q;
  };

  c.preset = get_or<std::string>(t, "experiment.preset", "experiment");
  const auto mu = t.get_child_optional("experiment.mu")
                      ? std::optional<double>(get_or<double>(t, "experiment.mu", 0.0))
                      : std::nullopt;
  if (c.preset == "experiment")
    c.geometry = presets::experiment_pair(mu.value_or(presets::kMu));
  else if (c.preset == "counterexample")
    c.geometry = presets::counterexample_pair(mu.value_or(presets::kMu));
  else if (c.preset == "custom") {
    c.geometry = io::get_pair_geometry(t, io::AngleUnit::degrees);
    if (mu)
      set_mu(c.geometry, *mu);
  } else
    throw ConfigurationError(fmt::format(
        "experiment.preset must be experiment, counterexample or custom, got '{}'", c.preset));

  const auto src = get_or<std::string>(t, "phantom.source", "inconceivable");
  if (src == "zero")
    c.phantom_source = PhantomSource::zero;
  else if (src == "inconceivable")
    c.phantom_source = PhantomSource::inconceivable;
  else if (src == "random")
    c.phantom_source = PhantomSource::random;
  else if (src == "file") {
    c.phantom_source = PhantomSource::file;
    const auto f = get_or<std::string>(t, "phantom.file", "");
    if (f.empty())
      throw ConfigurationError("phantom.source = file needs phantom.file");
    c.phantom_file = resolve(f);
    if (!std::filesystem::exists(c.phantom_file))
      throw ConfigurationError(
          fmt::format("phantom.file '{}' does not exist", c.phantom_file.string()));
  } else
    throw ConfigurationError(fmt::format(
        "phantom.source must be zero, inconceivable, file or random, got '{}'", src));
  c.phantom_count = get_or(t, "phantom.count", c.phantom_count);
  require_positive(c.phantom_count, "phantom.count");

  c.image = get_or(t, "grid.image", c.image);
  c.extent = get_or(t, "grid.extent", c.extent);
  c.bins = get_or(t, "grid.bins", c.bins);
  require_positive(c.image, "grid.image");
  if (c.bins < 2)
    throw ConfigurationError("grid.bins must be at least 2");
  if (!(c.extent > 0.0))
    throw ConfigurationError("grid.extent must be positive");

  const auto mode = get_or<std::string>(t, "projection.mode", "continuous");
  if (mode != "continuous" && mode != "discrete")
    throw ConfigurationError(
        fmt::format("projection.mode must be continuous or discrete, got '{}'", mode));
  c.discrete_projection = mode == "discrete";

  c.max_iter = get_or(t, "solver.max_iter", c.max_iter);
  c.tol = get_or(t, "solver.tol", c.tol);
  require_positive(c.max_iter, "solver.max_iter");

  if (auto f = t.get_optional<std::string>("check.first"))
    c.check_first = resolve(*f);
  if (auto f = t.get_optional<std::string>("check.second"))
    c.check_second = resolve(*f);
  c.check_tolerance = get_or(t, "check.tolerance", c.check_tolerance);

  c.sep_n1 = get_or(t, "separability.n1", c.sep_n1);
  c.sep_n2 = get_or(t, "separability.n2", c.sep_n2);
  require_positive(c.sep_n1, "separability.n1");
  require_positive(c.sep_n2, "separability.n2");
  c.sep_function = get_or<std::string>(t, "separability.function", c.sep_function);
  if (c.sep_function != "full" && c.sep_function != "normalized" && c.sep_function != "additive")
    throw ConfigurationError(fmt::format(
        "separability.function must be full, normalized or additive, got '{}'", c.sep_function));
  return c;
}

Phantom make_phantom(const ExperimentConfig &cfg) {
  switch (cfg.phantom_source) {
  case PhantomSource::zero:
    return {};
  case PhantomSource::file: {
    Phantom f = io::read_phantom_csv(cfg.phantom_file);
    if (!f.supported_in(cfg.geometry.domain))
      throw ConfigurationError(fmt::format("phantom '{}' is not supported inside the domain",
                                           cfg.phantom_file.string()));
    return f;
  }
  case PhantomSource::random:
    return random_phantom(cfg.geometry.domain, cfg.phantom_count, cfg.seed);
  case PhantomSource::inconceivable:
    break;
  }
  throw ConfigurationError("the inconceivable target is data, not a phantom");
}

} // namespace pprc::cli
