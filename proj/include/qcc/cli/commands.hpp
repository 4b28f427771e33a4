#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qcc/cli/config.hpp"

namespace qcc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitIo = 4;

/// Version string recorded in manifests.
std::string version();

struct RunRequest {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::filesystem::path output_dir = ".";
  std::optional<std::uint64_t> seed;
  int workers = 0;  ///< 0 keeps the OpenMP default
};

/// Runs one command and writes its CSV files plus manifest.json into
/// output_dir. Files are written as *.partial and renamed only after every
/// output is complete; on failure the partials are removed. Throws the
/// library exceptions, ConfigError or IoError.
void run(const RunRequest& request);

/// Full command-line entry point. Returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qcc::cli
