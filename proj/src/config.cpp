#include "nonlocal/config.hpp"
#include "nonlocal/errors.hpp"
#include "nonlocal/experiments.hpp"
#include "nonlocal/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

namespace nonlocal {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(Command c) {
  switch (c) {
  case Command::KernelTable:
    return "kernel-table";
  case Command::GroundState:
    return "ground-state";
  case Command::DirichletEig:
    return "dirichlet-eig";
  case Command::StabilitySweep:
    return "stability-sweep";
  case Command::AnharmonicLimit:
    return "anharmonic-limit";
  case Command::Monotonicity:
    return "monotonicity";
  case Command::AntisymCheck:
    return "antisym-check";
  case Command::EmbeddingCheck:
    return "embedding-check";
  }
  return "ground-state";
}

Command command_from_string(const std::string &s) {
  for (Command c : {Command::KernelTable, Command::GroundState,
                    Command::DirichletEig, Command::StabilitySweep,
                    Command::AnharmonicLimit, Command::Monotonicity,
                    Command::AntisymCheck, Command::EmbeddingCheck})
    if (to_string(c) == s)
      return c;
  throw ConfigError("command: unknown command '" + s + "'");
}

BernsteinSymbol SymbolConfig::build() const {
  if (!custom)
    return BernsteinSymbol::relativistic(mass, alpha);
  double m = 0.0;
  if (*custom == "relativistic_subordinated")
    m = mass;
  else if (*custom != "stable_subordinated")
    throw ConfigError("symbol.custom: unknown custom symbol '" + *custom + "'");
  const BernsteinSymbol rel = BernsteinSymbol::relativistic(m, alpha);
  return BernsteinSymbol::custom(
      *custom, [rel](double z) { return rel(z); },
      relativistic_levy_density(m, alpha));
}

namespace {

void check_keys(const json &obj, const std::string &where,
                const std::set<std::string> &allowed) {
  if (!obj.is_object())
    throw ConfigError(where + ": expected an object");
  for (const auto &[key, value] : obj.items())
    if (!allowed.count(key))
      throw ConfigError(where + ": unknown key '" + key + "'");
}

template <class T>
void read(const json &obj, const char *key, T &out, const std::string &where) {
  if (!obj.contains(key))
    return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception &e) {
    throw ConfigError(where + "." + key + ": " + e.what());
  }
}

SolverConfig parse_solver(const json &j, SolverConfig s, const std::string &where) {
  check_keys(j, where,
             {"tau", "tol", "vector_tol", "max_iters", "splitting", "seed",
              "projection"});
  read(j, "tau", s.tau, where);
  read(j, "tol", s.tol, where);
  read(j, "vector_tol", s.vector_tol, where);
  read(j, "max_iters", s.max_iters, where);
  read(j, "seed", s.seed, where);
  if (j.contains("splitting")) {
    std::string sp;
    read(j, "splitting", sp, where);
    try {
      s.splitting = splitting_from_string(sp);
    } catch (const DomainError &e) {
      throw ConfigError(where + ".splitting: " + e.what());
    }
  }
  if (j.contains("projection") && !j.at("projection").is_null()) {
    double r = 0.0;
    read(j, "projection", r, where);
    s.projection = r;
  }
  try {
    s.validate();
  } catch (const DomainError &e) {
    throw ConfigError(where + ": " + e.what());
  }
  return s;
}

} // namespace

void RunConfig::validate() const {
  if (!(symbol.alpha > 0.0 && symbol.alpha < 2.0))
    throw ConfigError("symbol.alpha: α ∈ (0,2) required, got " +
                      format_double(symbol.alpha));
  if (!(symbol.mass >= 0.0) || !std::isfinite(symbol.mass))
    throw ConfigError("symbol.m: m ≥ 0 required, got " +
                      format_double(symbol.mass));
  try {
    grid.validate();
  } catch (const DomainError &e) {
    throw ConfigError(std::string("grid: ") + e.what());
  }
  quadrature.validate();
  solver.validate();
  const double half = 0.5 * grid.L;
  if (potential.kind == "well") {
    potential.well.validate();
    const double extent = potential.well.a + potential.well.eps;
    if (!(extent < half))
      throw BoxTooSmall("potential: a + eps = " + format_double(extent) +
                        " must be < L/2 = " + format_double(half));
  } else if (potential.kind == "anharmonic") {
    if (potential.k < 1)
      throw ConfigError("potential.k: k ≥ 1 required");
  } else if (potential.kind != "none") {
    throw ConfigError("potential.kind: expected none, well or anharmonic");
  }

  const bool needs_well = command == Command::StabilitySweep ||
                          command == Command::Monotonicity;
  if (needs_well && potential.kind != "well")
    throw ConfigError(to_string(command) + ": requires potential.kind = well");
  if (command == Command::StabilitySweep) {
    if (sweep.eps_schedule.empty())
      throw ConfigError("sweep.eps_schedule: must not be empty");
    for (std::size_t i = 0; i < sweep.eps_schedule.size(); ++i) {
      const double e = sweep.eps_schedule[i];
      if (!(e >= 0.0) || (i > 0 && !(e < sweep.eps_schedule[i - 1])))
        throw ConfigError("sweep.eps_schedule: must be strictly decreasing and >= 0");
      if (e > 0.0 && e < 2.0 * grid.h() * (1.0 - 1e-12))
        throw ConfigError("sweep.eps_schedule: eps = " + format_double(e) +
                          " is below the resolvable floor 2h = " +
                          format_double(2.0 * grid.h()));
      if (!(potential.well.a + e < half))
        throw BoxTooSmall("sweep.eps_schedule: a + eps must be < L/2");
    }
  }
  if (command == Command::AnharmonicLimit) {
    if (sweep.k_list.empty())
      throw ConfigError("sweep.k_list: must not be empty");
    for (std::size_t i = 0; i < sweep.k_list.size(); ++i)
      if (sweep.k_list[i] < 1 || (i > 0 && sweep.k_list[i] <= sweep.k_list[i - 1]))
        throw ConfigError("sweep.k_list: must be increasing integers >= 1");
    if (!(1.0 < half))
      throw BoxTooSmall("anharmonic-limit: the unit ball must fit, need L > 2");
  }
  if (command == Command::DirichletEig || command == Command::AnharmonicLimit ||
      command == Command::StabilitySweep) {
    if (!(dirichlet.radius > 0.0))
      throw ConfigError("dirichlet.radius: must be > 0");
    if (!(dirichlet.radius < half))
      throw BoxTooSmall("dirichlet.radius: must be < L/2");
  }
  if (command == Command::KernelTable) {
    if (symbol.custom)
      throw ConfigError("kernel-table: relativistic symbols only");
    if (kernel.radii.empty())
      throw ConfigError("kernel.radii: must not be empty");
    for (std::size_t i = 0; i < kernel.radii.size(); ++i)
      if (!(kernel.radii[i] > 0.0) || (i > 0 && !(kernel.radii[i] > kernel.radii[i - 1])))
        throw ConfigError("kernel.radii: must be positive and strictly increasing");
    if (kernel.id == KernelId::Heat && !(kernel.time && *kernel.time > 0.0))
      throw ConfigError("kernel.t: heat kernel needs t > 0");
    if ((kernel.id == KernelId::Sigma || kernel.id == KernelId::JPrime) &&
        !(symbol.mass > 0.0))
      throw ConfigError("kernel.id: sigma and j_prime need m > 0");
  }
  if (command == Command::AntisymCheck) {
    if (!(antisym.mu <= 0.0))
      throw ConfigError("antisym.mu: μ ≤ 0 required");
    if (antisym.function != "odd_gaussian" && antisym.function != "odd_sech")
      throw ConfigError("antisym.function: expected odd_gaussian or odd_sech");
    if (symbol.custom)
      throw ConfigError("antisym-check: relativistic symbols only");
  }
  if (command == Command::EmbeddingCheck) {
    if (!(embedding.s > 0.0 && embedding.s < 1.0))
      throw ConfigError("embedding.s: s ∈ (0,1) required");
    if (embedding.samples < 1 || embedding.kmax < 1)
      throw ConfigError("embedding: samples and kmax must be >= 1");
  }
}

RunConfig parse_config_text(const std::string &text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error &e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  check_keys(j, "config",
             {"command", "symbol", "grid", "potential", "solver", "quadrature",
              "kernel", "sweep", "dirichlet", "antisym", "embedding",
              "output_dir"});
  RunConfig c;
  if (!j.contains("command"))
    throw ConfigError("config: missing 'command'");
  std::string cmd;
  read(j, "command", cmd, "config");
  c.command = command_from_string(cmd);

  if (j.contains("symbol")) {
    const json &s = j.at("symbol");
    check_keys(s, "symbol", {"m", "alpha", "custom"});
    read(s, "m", c.symbol.mass, "symbol");
    read(s, "alpha", c.symbol.alpha, "symbol");
    if (s.contains("custom")) {
      std::string name;
      read(s, "custom", name, "symbol");
      c.symbol.custom = name;
    }
  }
  if (j.contains("grid")) {
    const json &g = j.at("grid");
    check_keys(g, "grid", {"d", "n", "L"});
    read(g, "d", c.grid.d, "grid");
    read(g, "n", c.grid.n, "grid");
    read(g, "L", c.grid.L, "grid");
  }
  if (j.contains("potential")) {
    const json &p = j.at("potential");
    check_keys(p, "potential", {"kind", "a", "v", "eps", "k"});
    read(p, "kind", c.potential.kind, "potential");
    read(p, "a", c.potential.well.a, "potential");
    read(p, "v", c.potential.well.v, "potential");
    read(p, "eps", c.potential.well.eps, "potential");
    read(p, "k", c.potential.k, "potential");
  }
  if (j.contains("solver"))
    c.solver = parse_solver(j.at("solver"), c.solver, "solver");
  c.dirichlet.solver = c.solver;
  if (j.contains("quadrature")) {
    const json &q = j.at("quadrature");
    check_keys(q, "quadrature", {"method", "abs_tol", "rel_tol", "max_evals"});
    if (q.contains("method")) {
      std::string m;
      read(q, "method", m, "quadrature");
      try {
        c.quadrature.method = quad_method_from_string(m);
      } catch (const Error &e) {
        throw ConfigError(std::string("quadrature.method: ") + e.what());
      }
    }
    read(q, "abs_tol", c.quadrature.abs_tol, "quadrature");
    read(q, "rel_tol", c.quadrature.rel_tol, "quadrature");
    read(q, "max_evals", c.quadrature.max_evals, "quadrature");
    try {
      c.quadrature.validate();
    } catch (const DomainError &e) {
      throw ConfigError(std::string("quadrature: ") + e.what());
    }
  }
  if (j.contains("kernel")) {
    const json &k = j.at("kernel");
    check_keys(k, "kernel", {"id", "radii", "t"});
    if (k.contains("id")) {
      std::string id;
      read(k, "id", id, "kernel");
      try {
        c.kernel.id = kernel_id_from_string(id);
      } catch (const DomainError &e) {
        throw ConfigError(std::string("kernel.id: ") + e.what());
      }
    }
    read(k, "radii", c.kernel.radii, "kernel");
    if (k.contains("t") && !k.at("t").is_null()) {
      double t = 0.0;
      read(k, "t", t, "kernel");
      c.kernel.time = t;
    }
  }
  if (j.contains("sweep")) {
    const json &s = j.at("sweep");
    check_keys(s, "sweep", {"eps_schedule", "k_list", "measure_floor"});
    read(s, "eps_schedule", c.sweep.eps_schedule, "sweep");
    read(s, "k_list", c.sweep.k_list, "sweep");
    read(s, "measure_floor", c.sweep.measure_floor, "sweep");
  }
  if (j.contains("dirichlet")) {
    const json &d = j.at("dirichlet");
    check_keys(d, "dirichlet", {"radius", "solver"});
    read(d, "radius", c.dirichlet.radius, "dirichlet");
    if (d.contains("solver"))
      c.dirichlet.solver =
          parse_solver(d.at("solver"), c.dirichlet.solver, "dirichlet.solver");
  }
  if (j.contains("antisym")) {
    const json &a = j.at("antisym");
    check_keys(a, "antisym", {"mu", "function"});
    read(a, "mu", c.antisym.mu, "antisym");
    read(a, "function", c.antisym.function, "antisym");
  }
  if (j.contains("embedding")) {
    const json &e = j.at("embedding");
    check_keys(e, "embedding", {"s", "samples", "kmax"});
    read(e, "s", c.embedding.s, "embedding");
    read(e, "samples", c.embedding.samples, "embedding");
    read(e, "kmax", c.embedding.kmax, "embedding");
  }
  if (j.contains("output_dir")) {
    std::string out;
    read(j, "output_dir", out, "config");
    c.output_dir = out;
  }
  c.validate();
  return c;
}

RunConfig parse_config(const fs::path &file) {
  std::ifstream is(file);
  if (!is)
    throw ConfigError("config: cannot open '" + file.string() + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str());
}

json to_json(const RunConfig &c) {
  json j;
  j["command"] = to_string(c.command);
  j["symbol"] = {{"m", c.symbol.mass}, {"alpha", c.symbol.alpha}};
  if (c.symbol.custom)
    j["symbol"]["custom"] = *c.symbol.custom;
  j["grid"] = {{"d", c.grid.d}, {"n", c.grid.n}, {"L", c.grid.L}};
  j["potential"] = {{"kind", c.potential.kind},
                    {"a", c.potential.well.a},
                    {"v", c.potential.well.v},
                    {"eps", c.potential.well.eps},
                    {"k", c.potential.k}};
  j["solver"] = to_json(c.solver);
  j["quadrature"] = to_json(c.quadrature);
  j["kernel"] = {{"id", to_string(c.kernel.id)}, {"radii", c.kernel.radii}};
  j["kernel"]["t"] = c.kernel.time ? json(*c.kernel.time) : json(nullptr);
  j["sweep"] = {{"eps_schedule", c.sweep.eps_schedule},
                {"k_list", c.sweep.k_list},
                {"measure_floor", c.sweep.measure_floor}};
  j["dirichlet"] = {{"radius", c.dirichlet.radius},
                    {"solver", to_json(c.dirichlet.solver)}};
  j["antisym"] = {{"mu", c.antisym.mu}, {"function", c.antisym.function}};
  j["embedding"] = {{"s", c.embedding.s},
                    {"samples", c.embedding.samples},
                    {"kmax", c.embedding.kmax}};
  j["output_dir"] = c.output_dir.string();
  return j;
}

// ---------------------------------------------------------------------------
// Dispatch

namespace {

struct Outputs {
  fs::path dir;
  std::vector<fs::path> files;
  void add(const std::vector<fs::path> &more) {
    files.insert(files.end(), more.begin(), more.end());
  }
  void add(const fs::path &p) { files.push_back(p); }
};

PotentialField build_potential(const RunConfig &c) {
  if (c.potential.kind == "well")
    return well(c.potential.well, c.grid);
  if (c.potential.kind == "anharmonic")
    return anharmonic(c.potential.k, c.grid);
  return {Field(c.grid), {"none", {}, false}};
}

PointFunction antisym_function(const AntisymConfig &a) {
  const double mu = a.mu;
  if (a.function == "odd_sech")
    return [mu](const std::vector<double> &x) {
      const double y = x[0] - mu;
      return std::tanh(y) / std::cosh(y);
    };
  return [mu](const std::vector<double> &x) {
    const double y = x[0] - mu;
    return y * std::exp(-y * y);
  };
}

void log(bool verbose, const std::string &msg) {
  if (verbose)
    std::cerr << "[nonlocal_spectra] " << msg << '\n';
}

void write_eigen_outputs(Outputs &out, const EigenResult &r,
                         const json &extra) {
  json j = to_json(r);
  for (const auto &[k, v] : extra.items())
    j[k] = v;
  write_json(out.dir / "result.json", j);
  out.add(out.dir / "result.json");
  out.add(write_field(r.phi, out.dir / "phi"));
  write_radial_profile(r.phi, out.dir / "profile.csv");
  out.add(out.dir / "profile.csv");
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < r.history.size(); ++i)
    rows.push_back({static_cast<double>(i + 1), r.history[i]});
  write_csv(out.dir / "history.csv", {"iter", "lambda"}, rows);
  out.add(out.dir / "history.csv");
}

} // namespace

DispatchResult dispatch(const RunConfig &cfg, int threads, bool verbose) {
  cfg.validate();
  Outputs out;
  out.dir = cfg.output_dir;
  fs::create_directories(out.dir);
  const json echo = to_json(cfg);
  write_json(out.dir / "config.json", echo);
  out.add(out.dir / "config.json");

  const BernsteinSymbol phi = cfg.symbol.build();
  bool converged = true;
  log(verbose, "running " + to_string(cfg.command) + " with " + phi.describe());

  switch (cfg.command) {
  case Command::KernelTable: {
    const KernelTable t = build_kernel_table(cfg.kernel.id, phi, cfg.grid.d,
                                             cfg.kernel.radii, cfg.kernel.time,
                                             cfg.quadrature, threads);
    out.add(write_kernel_table(t, out.dir / "kernel_table.csv"));
    break;
  }
  case Command::GroundState: {
    const PotentialField V = build_potential(cfg);
    const EigenResult r = ground_state(phi, V, cfg.solver);
    converged = r.converged;
    write_eigen_outputs(out, r, {{"potential", to_json(V.meta)}});
    break;
  }
  case Command::DirichletEig: {
    const EigenResult r = dirichlet_ground_state(phi, cfg.dirichlet.radius,
                                                 cfg.grid, cfg.dirichlet.solver);
    converged = r.converged;
    write_eigen_outputs(out, r, {{"radius", cfg.dirichlet.radius}});
    break;
  }
  case Command::StabilitySweep: {
    StabilityOptions opt;
    opt.threads = threads;
    opt.measure_floor = cfg.sweep.measure_floor;
    const EigenResult da = dirichlet_ground_state(phi, cfg.potential.well.a,
                                                  cfg.grid, cfg.dirichlet.solver);
    opt.lambda_a = da.lambda;
    StabilityReport r = stability_sweep(phi, cfg.potential.well,
                                        cfg.sweep.eps_schedule, cfg.grid,
                                        cfg.solver, opt);
    converged = da.converged && r.target && r.target->converged;
    for (bool b : r.inner_converged)
      converged = converged && b;
    ImageConvergence img;
    if (converged) {
      img = operator_image_convergence(phi, cfg.potential.well, r);
      r.op_gaps = img.gaps;
    }
    json j = to_json(r);
    j["lambda_a"] = da.lambda;
    j["image"] = to_json(img);
    write_json(out.dir / "report.json", j);
    out.add(out.dir / "report.json");
    write_stability_csv(r, out.dir / "report.csv");
    out.add(out.dir / "report.csv");
    break;
  }
  case Command::AnharmonicLimit: {
    const StabilityReport r =
        anharmonic_to_dirichlet(phi, cfg.sweep.k_list, cfg.grid, cfg.solver,
                                cfg.dirichlet.solver, threads);
    converged = r.converged;
    write_json(out.dir / "report.json", to_json(r));
    out.add(out.dir / "report.json");
    write_stability_csv(r, out.dir / "report.csv");
    out.add(out.dir / "report.csv");
    break;
  }
  case Command::Monotonicity: {
    const PotentialField V = build_potential(cfg);
    const EigenResult r = ground_state(phi, V, cfg.solver);
    converged = r.converged;
    const double edge = cfg.potential.well.a + cfg.potential.well.eps;
    const MonotonicityReport m = monotonicity_check(r, edge);
    const SymmetryDefect s = symmetry_check(r);
    json j = to_json(m);
    j["symmetry"] = {{"exact", s.exact}, {"interpolated", s.interpolated}};
    j["eigen"] = to_json(r);
    write_json(out.dir / "monotonicity.json", j);
    out.add(out.dir / "monotonicity.json");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < m.radii.size(); ++i)
      rows.push_back({m.radii[i], m.profile[i]});
    write_csv(out.dir / "profile.csv", {"r", "phi(r)"}, rows);
    out.add(out.dir / "profile.csv");
    break;
  }
  case Command::AntisymCheck: {
    const AntisymmetricCheck a = antisymmetric_minimum_check(
        cfg.symbol.mass, cfg.symbol.alpha, cfg.grid.d,
        antisym_function(cfg.antisym), cfg.antisym.mu, cfg.quadrature);
    write_json(out.dir / "antisym.json", to_json(a));
    out.add(out.dir / "antisym.json");
    write_csv(out.dir / "antisym.csv",
              {"mu", "x_star", "delta", "lhs", "rhs1", "rhs2"},
              {{a.mu, a.x_star[0], a.delta, a.lhs, a.rhs1, a.rhs2}});
    out.add(out.dir / "antisym.csv");
    break;
  }
  case Command::EmbeddingCheck: {
    std::vector<Field> samples;
    for (int i = 0; i < cfg.embedding.samples; ++i)
      samples.push_back(random_band_limited_field(
          cfg.grid, cfg.solver.seed + static_cast<std::uint64_t>(i),
          cfg.embedding.kmax));
    const EmbeddingCheck e =
        embedding_tail_check(phi, samples, cfg.embedding.s, cfg.quadrature);
    write_json(out.dir / "embedding.json", to_json(e));
    out.add(out.dir / "embedding.json");
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < e.lhs.size(); ++i)
      rows.push_back({static_cast<double>(i), e.lhs[i], e.rhs[i]});
    write_csv(out.dir / "embedding.csv", {"sample", "lhs", "rhs"}, rows);
    out.add(out.dir / "embedding.csv");
    break;
  }
  }

  const fs::path manifest = out.dir / "manifest.json";
  json m = make_manifest(echo, cfg.solver.seed, out.files);
  m["command"] = to_string(cfg.command);
  m["converged"] = converged;
  write_json(manifest, m);
  out.add(manifest);
  log(verbose, converged ? "done" : "done (not converged)");
  return {converged ? 0 : 2, out.files};
}

} // namespace nonlocal
