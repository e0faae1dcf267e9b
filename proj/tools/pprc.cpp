#include "commands.hpp"

#include "pprc/errors.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <iostream>

int main(int argc, char **argv) {
  using namespace pprc::cli;
  CLI::App app{"Projection pair range conditions: projections, consistency checks, "
               "separability analysis and CGNE experiments"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "pprc_out";
  int threads = 1;
  std::uint64_t seed = 1;
  app.add_option("--config", config_path, "INI experiment configuration")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--seed", seed, "seed for random phantoms")->capture_default_str();

  auto *project = app.add_subcommand("project", "write per-view sinogram CSVs");
  auto *check = app.add_subcommand("check", "evaluate the projection pair range condition");
  auto *separability = app.add_subcommand("separability", "double-difference separability test");
  auto *solve = app.add_subcommand("solve", "CGNE least-squares experiment");
  auto *verify = app.add_subcommand("verify", "run the invariant suite");

  CLI11_PARSE(app, argc, argv);

  try {
    ExperimentConfig cfg = config_path.empty() ? default_config() : load_config(config_path);
    cfg.seed = seed;
    const CommandContext ctx{out_dir, threads, &std::cout, &std::cerr};
    if (project->parsed())
      return cmd_project(cfg, ctx);
    if (check->parsed())
      return cmd_check(cfg, ctx);
    if (separability->parsed())
      return cmd_separability(cfg, ctx);
    if (solve->parsed())
      return cmd_solve(cfg, ctx);
    if (verify->parsed())
      return cmd_verify(cfg, ctx);
  } catch (const pprc::ConfigurationError &e) {
    fmt::print(std::cerr, "configuration error: {}\n", e.what());
    return kConfigError;
  } catch (const std::exception &e) {
    fmt::print(std::cerr, "error: {}\n", e.what());
    return kRuntimeError;
  }
  return kRuntimeError;
}
