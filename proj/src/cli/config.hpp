#pragma once

#include "pprc/geometry.hpp"
#include "pprc/phantom.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

namespace pprc::cli {

enum class PhantomSource { zero, inconceivable, file, random };

/// Parsed experiment configuration (INI). Angles in the file are degrees.
///
///   [experiment]  preset = experiment | counterexample | custom, mu = <1/cm>
///   [first] [second] [domain]  geometry when preset = custom (see io.hpp)
///   [phantom]     source = zero | inconceivable | file | random, file, count
///   [grid]        image, extent, bins
///   [projection]  mode = continuous | discrete
///   [solver]      max_iter, tol
///   [check]       first, second (sinogram CSVs), tolerance
///   [separability] n1, n2, function = full | normalized | additive
struct ExperimentConfig {
  std::filesystem::path source;
  std::string text; ///< verbatim file contents

  PairGeometry geometry;
  std::string preset = "experiment";

  PhantomSource phantom_source = PhantomSource::inconceivable;
  std::filesystem::path phantom_file;
  int phantom_count = 3;
  std::uint64_t seed = 1;

  int image = 200;
  double extent = 70.0;
  int bins = 100;

  bool discrete_projection = false;

  int max_iter = 2000;
  double tol = 1e-3;

  std::optional<std::filesystem::path> check_first;
  std::optional<std::filesystem::path> check_second;
  double check_tolerance = 1e-6;

  int sep_n1 = 48;
  int sep_n2 = 48;
  std::string sep_function = "full";
};

/// Throws ConfigurationError with the offending key on any problem.
ExperimentConfig load_config(const std::filesystem::path &path);
/// Defaults only; geometry is the experiment preset.
ExperimentConfig default_config();

/// The phantom requested by the config. Requires a bump-based source.
Phantom make_phantom(const ExperimentConfig &cfg);

} // namespace pprc::cli
