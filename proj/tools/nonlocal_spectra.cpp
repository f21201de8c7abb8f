#include "nonlocal/config.hpp"
#include "nonlocal/errors.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

int main(int argc, char **argv) {
  CLI::App app{"Ground states and kernel tables for non-local Schroedinger operators"};
  std::string config_path;
  std::string output;
  std::uint64_t seed = 0;
  int threads = 0;
  bool verbose = false;
  app.add_option("--config", config_path, "JSON run configuration")
      ->required()
      ->check(CLI::ExistingFile);
  auto *out_opt = app.add_option("--output", output, "Output directory");
  auto *seed_opt = app.add_option("--seed", seed, "Overrides solver.seed");
  app.add_option("--threads", threads, "Worker threads")
      ->envname("NONLOCAL_SPECTRA_THREADS")
      ->check(CLI::PositiveNumber);
  app.add_flag("--verbose", verbose, "Progress on stderr");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    nonlocal::RunConfig cfg = nonlocal::parse_config(config_path);
    if (*out_opt)
      cfg.output_dir = output;
    if (*seed_opt) {
      cfg.solver.seed = seed;
      cfg.dirichlet.solver.seed = seed;
    }
    std::cout << nonlocal::to_json(cfg).dump(2) << std::endl;
    const auto result =
        nonlocal::dispatch(cfg, threads > 0 ? threads : 1, verbose);
    if (verbose)
      for (const auto &f : result.files)
        std::cerr << "wrote " << f.string() << '\n';
    if (result.exit_code == 2)
      std::cerr << "warning: some solver runs did not converge\n";
    return result.exit_code;
  } catch (const nonlocal::Error &e) {
    std::cerr << "error: " << e.what() << '\n';
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 1;
}
