#include "nonlocal/io.hpp"
#include "nonlocal/errors.hpp"

#include <fftw3.h>

#include <bit>
#include <charconv>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace nonlocal {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

namespace {

std::ofstream open_out(const fs::path &p, std::ios::openmode mode = std::ios::out) {
  if (p.has_parent_path())
    fs::create_directories(p.parent_path());
  std::ofstream os(p, mode);
  if (!os)
    throw Error("cannot open '" + p.string() + "' for writing");
  return os;
}

fs::path with_suffix(fs::path p, const std::string &suffix) {
  p += suffix;
  return p;
}

} // namespace

std::vector<fs::path> write_field(const Field &u, const fs::path &stem,
                                  const json &extra) {
  const fs::path bin = with_suffix(stem, ".bin");
  const fs::path meta = with_suffix(stem, ".json");
  {
    auto os = open_out(bin, std::ios::out | std::ios::binary);
    for (double x : u.values) {
      std::uint64_t bits = std::bit_cast<std::uint64_t>(x);
      if constexpr (std::endian::native == std::endian::big)
        bits = __builtin_bswap64(bits);
      os.write(reinterpret_cast<const char *>(&bits), sizeof(bits));
    }
    if (!os)
      throw Error("write failed for '" + bin.string() + "'");
  }
  json j = extra;
  j["d"] = u.grid.d;
  j["n"] = u.grid.n;
  j["L"] = u.grid.L;
  write_json(meta, j);
  return {bin, meta};
}

Field read_field(const fs::path &stem) {
  const fs::path meta = with_suffix(stem, ".json");
  std::ifstream js(meta);
  if (!js)
    throw Error("cannot open '" + meta.string() + "'");
  const json j = json::parse(js);
  const Grid g(j.at("d").get<int>(), j.at("n").get<int>(),
               j.at("L").get<double>());
  std::ifstream is(with_suffix(stem, ".bin"), std::ios::binary);
  if (!is)
    throw Error("cannot open field binary for '" + stem.string() + "'");
  Field u(g);
  for (double &x : u.values) {
    std::uint64_t bits = 0;
    is.read(reinterpret_cast<char *>(&bits), sizeof(bits));
    if (!is)
      throw GridMismatch("field binary is shorter than its header declares");
    if constexpr (std::endian::native == std::endian::big)
      bits = __builtin_bswap64(bits);
    x = std::bit_cast<double>(bits);
  }
  return u;
}

json to_json(const QuadratureSpec &q) {
  return {{"method", to_string(q.method)},
          {"abs_tol", q.abs_tol},
          {"rel_tol", q.rel_tol},
          {"max_evals", q.max_evals}};
}

json to_json(const SolverConfig &c) {
  json j = {{"tau", c.tau},
            {"tol", c.tol},
            {"vector_tol", c.vector_tol},
            {"max_iters", c.max_iters},
            {"splitting", to_string(c.splitting)},
            {"seed", c.seed}};
  j["projection"] = c.projection ? json(*c.projection) : json(nullptr);
  return j;
}

json to_json(const PotentialMeta &m) {
  json j = {{"kind", m.kind}, {"clamped", m.clamped}};
  for (const auto &[k, v] : m.params)
    j[k] = v;
  return j;
}

json to_json(const EigenResult &r) {
  return {{"lambda", r.lambda},     {"residual", r.residual},
          {"iters", r.iters},       {"converged", r.converged},
          {"config", to_json(r.config)}};
}

std::vector<fs::path> write_kernel_table(const KernelTable &t,
                                         const fs::path &csv) {
  t.validate();
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < t.radii.size(); ++i)
    rows.push_back({t.radii[i], t.values[i], t.error_estimates[i]});
  write_csv(csv, {"r", "value", "error_estimate"}, rows);
  fs::path side = csv;
  side.replace_extension(".json");
  json j = {{"kernel_id", to_string(t.kernel_id)},
            {"d", t.dimension},
            {"alpha", t.alpha},
            {"m", t.mass},
            {"quadrature", to_json(t.quadrature)}};
  j["t"] = t.time ? json(*t.time) : json(nullptr);
  write_json(side, j);
  return {csv, side};
}

void write_csv(const fs::path &path, const std::vector<std::string> &header,
               const std::vector<std::vector<double>> &rows) {
  auto os = open_out(path);
  for (std::size_t i = 0; i < header.size(); ++i)
    os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto &row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
  if (!os)
    throw Error("write failed for '" + path.string() + "'");
}

void write_radial_profile(const Field &u, const fs::path &csv) {
  std::vector<std::vector<double>> rows;
  for (const auto &[r, v] : radial_profile(u))
    rows.push_back({r, v});
  write_csv(csv, {"r", "phi(r)"}, rows);
}

void write_json(const fs::path &path, const json &j) {
  auto os = open_out(path);
  os << j.dump(2) << '\n';
  if (!os)
    throw Error("write failed for '" + path.string() + "'");
}

std::string content_hash(const std::string &text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

json make_manifest(const json &config, std::uint64_t seed,
                   const std::vector<fs::path> &files) {
  json j;
  j["config_hash"] = content_hash(config.dump());
  j["seed"] = seed;
  j["versions"] = {{"nonlocal_spectra", "1.0.0"},
                   {"fftw", std::string(fftw_version)},
                   {"compiler", std::string(__VERSION__)},
                   {"cxx_standard", static_cast<long>(__cplusplus)}};
  json list = json::array();
  for (const auto &f : files)
    list.push_back(f.filename().string());
  j["files"] = list;
  return j;
}

} // namespace nonlocal
