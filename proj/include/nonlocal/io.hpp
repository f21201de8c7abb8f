#pragma once

#include "nonlocal/eigensolver.hpp"
#include "nonlocal/grid.hpp"
#include "nonlocal/kernels.hpp"
#include "nonlocal/potentials.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace nonlocal {

//! Shortest decimal string that parses back to exactly x.
std::string format_double(double x);

//! Writes `<stem>.bin` (little-endian float64, row-major) and `<stem>.json`
//! ({"d", "n", "L"} plus `extra`). Returns the paths written.
std::vector<std::filesystem::path>
write_field(const Field &u, const std::filesystem::path &stem,
            const nlohmann::json &extra = nlohmann::json::object());
Field read_field(const std::filesystem::path &stem);

nlohmann::json to_json(const QuadratureSpec &q);
nlohmann::json to_json(const SolverConfig &c);
nlohmann::json to_json(const PotentialMeta &m);
//! Summary of a solver run (phi itself goes through write_field).
nlohmann::json to_json(const EigenResult &r);

//! `r,value,error_estimate` CSV plus a `.json` sidecar with the table metadata.
std::vector<std::filesystem::path>
write_kernel_table(const KernelTable &t, const std::filesystem::path &csv);

//! CSV with a header row; every cell formatted with format_double.
void write_csv(const std::filesystem::path &path,
               const std::vector<std::string> &header,
               const std::vector<std::vector<double>> &rows);

//! `r,phi(r)` shell-averaged profile.
void write_radial_profile(const Field &u, const std::filesystem::path &csv);

void write_json(const std::filesystem::path &path, const nlohmann::json &j);

//! FNV-1a 64-bit hash of a string, hex encoded.
std::string content_hash(const std::string &text);

//! Reproducibility record: config hash, seed, library and dependency
//! versions, and the list of files produced by the run.
nlohmann::json make_manifest(const nlohmann::json &config, std::uint64_t seed,
                             const std::vector<std::filesystem::path> &files);

} // namespace nonlocal
