#pragma once

#include "nonlocal/bernstein.hpp"
#include "nonlocal/eigensolver.hpp"
#include "nonlocal/grid.hpp"
#include "nonlocal/kernels.hpp"
#include "nonlocal/potentials.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nonlocal {

enum class Command {
  KernelTable,
  GroundState,
  DirichletEig,
  StabilitySweep,
  AnharmonicLimit,
  Monotonicity,
  AntisymCheck,
  EmbeddingCheck
};

std::string to_string(Command c);
Command command_from_string(const std::string &s);

struct SymbolConfig {
  double mass = 0.0;
  double alpha = 1.0;
  //! Named custom symbol; kernels then come from Gaussian subordination.
  //! Known names: "stable_subordinated", "relativistic_subordinated".
  std::optional<std::string> custom;

  BernsteinSymbol build() const;
};

struct PotentialConfig {
  std::string kind = "none"; // "none", "well", "anharmonic"
  WellSpec well;
  int k = 1;
};

struct KernelConfig {
  KernelId id = KernelId::J;
  std::vector<double> radii;
  std::optional<double> time;
};

struct SweepConfig {
  std::vector<double> eps_schedule;
  std::vector<int> k_list;
  bool measure_floor = true;
};

struct DirichletConfig {
  double radius = 1.0;
  SolverConfig solver;
};

struct AntisymConfig {
  double mu = 0.0;
  //! "odd_gaussian": (x - mu) exp(-(x - mu)^2); "odd_sech": tanh(x - mu)/cosh(x - mu).
  std::string function = "odd_gaussian";
};

struct EmbeddingConfig {
  double s = 0.5;
  int samples = 20;
  int kmax = 8;
};

struct RunConfig {
  Command command = Command::GroundState;
  SymbolConfig symbol;
  Grid grid{1, 1024, 40.0};
  PotentialConfig potential;
  SolverConfig solver;
  QuadratureSpec quadrature;
  KernelConfig kernel;
  SweepConfig sweep;
  DirichletConfig dirichlet;
  AntisymConfig antisym;
  EmbeddingConfig embedding;
  std::filesystem::path output_dir = "out";

  //! Cross-field checks (geometry fits the box, command prerequisites).
  void validate() const;
};

//! Parse and validate; unknown keys are rejected. Throws ConfigError (with
//! line and column for syntax errors), DomainError or BoxTooSmall.
RunConfig parse_config_text(const std::string &text);
RunConfig parse_config(const std::filesystem::path &file);

//! Effective configuration with all defaults filled in.
nlohmann::json to_json(const RunConfig &cfg);

struct DispatchResult {
  int exit_code = 0;
  std::vector<std::filesystem::path> files;
};

//! Runs the configured command, writing all artifacts and a manifest.json
//! into cfg.output_dir. exit_code is 0 on success and 2 when some solver run
//! did not converge (artifacts are still written and flagged).
DispatchResult dispatch(const RunConfig &cfg, int threads = 1,
                        bool verbose = false);

} // namespace nonlocal
