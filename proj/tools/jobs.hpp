#pragma once

// Manifest-driven array jobs behind the quantize, scheme, wigner, stft,
// modnorm, schatten, compose and transfer commands.

#include "psdo/grid.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace psdo::cli {

struct JobManifest {
  GridSpec grid;
  std::map<std::string, std::filesystem::path> inputs;
  std::string operation;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t seed = 42;
  std::optional<std::filesystem::path> output;

  /// Validates against the manifest schema; relative paths resolve against `base`.
  static JobManifest from_json(const nlohmann::json& j, const std::filesystem::path& base = {});
  static JobManifest load(const std::filesystem::path& path);
  nlohmann::json to_json() const;
};

const std::vector<std::string>& job_operations();

/// Name an unnamed `--input PATH` binds to.
std::string primary_input(const std::string& operation);

/// Runs the job, writes its array output (if any) and returns the JSON
/// summary printed on stdout. Throws psdo::Error.
nlohmann::json run_job(const JobManifest& job);

}  // namespace psdo::cli
