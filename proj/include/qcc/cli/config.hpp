#pragma once

// JSON run configurations. Every key is optional and defaults to the
// reference setup of the corresponding command; unknown keys are errors.
// Lengths and positions are given in reference wavelengths (2 pi v / w_ref)
// and frequencies in units of w_ref.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qcc/errors.hpp"
#include "qcc/scattering.hpp"

namespace qcc::cli {

/// Invalid configuration or command line. Exit code 2.
class ConfigError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Filesystem failure. Exit code 4.
class IoError : public Error {
 public:
  using Error::Error;
};

struct GridConfig {
  double start = 0.0;
  double stop = 1.0;
  std::size_t points = 2;

  std::vector<double> values() const;
};

/// A chain element as written in a config file; lengths in wavelengths.
struct ElementConfig {
  bool is_junction = true;
  JunctionSpec junction;
  double length = 0.0;
};

struct ScatterConfig {
  JunctionSpec junction{1.0, 10.0};
  GridConfig omega{0.01, 3.0, 1000};
};

struct Bands1dConfig {
  std::vector<ElementConfig> cell;
  GridConfig omega{0.01, 3.0, 3000};
};

struct Bands2dConfig {
  std::vector<ElementConfig> cell;
  std::optional<std::vector<ElementConfig>> cell_v;
  std::vector<double> omegas;
  std::size_t resolution = 200;
};

struct RefractConfig {
  std::vector<ElementConfig> cell;
  double c1 = 0.70710678118654752;
  bool rotated = true;
  GridConfig omega{0.05, 5.0, 199};
  GridConfig theta_in{0.05, 1.2, 24};  // radians
};

struct EntangleConfig {
  JunctionSpec junction{1.0, 10.0};
  std::size_t n_junctions = 20;
  double length = 2.0;
  GridConfig omega{0.5, 1.5, 20};
  GridConfig delta{0.0, 0.3, 3};
  std::size_t realizations = 100;
  std::size_t d_points = 64;
  double f = 0.1;
  double lambda_nr = 0.4;
  double gamma0 = 1.0;
  bool correlated_draws = false;
};

struct GreensConfig {
  std::vector<ElementConfig> chain;
  double omega = 0.5;
  double source = -0.25;
  GridConfig x{-1.0, 1.0, 201};
};

/// Parsed command configuration plus the effective JSON (defaults filled
/// in) that is written to the manifest.
struct LoadedConfig {
  std::string command;
  std::uint64_t seed = 0;
  nlohmann::json effective;
};

/// Accepts either a plain config object or a manifest written by a previous
/// run ({"command", "version", "seed", "config"}). The seed override, if
/// any, replaces the config seed.
LoadedConfig load_config(const std::string& command, const nlohmann::json& document,
                         std::optional<std::uint64_t> seed_override);

/// Reads and parses a JSON file; ConfigError on syntax errors, IoError if
/// the file cannot be read.
nlohmann::json read_json_file(const std::filesystem::path& path);

ScatterConfig parse_scatter(const nlohmann::json& j);
Bands1dConfig parse_bands1d(const nlohmann::json& j);
Bands2dConfig parse_bands2d(const nlohmann::json& j);
RefractConfig parse_refract(const nlohmann::json& j);
EntangleConfig parse_entangle(const nlohmann::json& j);
GreensConfig parse_greens(const nlohmann::json& j);

nlohmann::json to_json(const ScatterConfig& c);
nlohmann::json to_json(const Bands1dConfig& c);
nlohmann::json to_json(const Bands2dConfig& c);
nlohmann::json to_json(const RefractConfig& c);
nlohmann::json to_json(const EntangleConfig& c);
nlohmann::json to_json(const GreensConfig& c);

/// Converts config elements (lengths in wavelengths) to a chain in internal
/// units.
CrystalChain to_chain(const std::vector<ElementConfig>& elements);

}  // namespace qcc::cli
