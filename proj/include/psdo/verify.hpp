#pragma once

// Identity suite behind `psdo verify`: every exact identity of the library
// evaluated on one grid with seeded random inputs.

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace psdo {

struct CheckOutcome {
  std::string suite;
  std::string name;
  std::string tag;  // short identifier of the identity being checked
  double deviation = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct VerifyOptions {
  std::string suite = "all";
  int n = 9;
  int d = 1;
  std::uint64_t seed = 42;
};

struct VerifyReport {
  VerifyOptions options;
  std::vector<CheckOutcome> checks;

  bool passed() const noexcept;
  nlohmann::json to_json() const;
  std::string to_text() const;
};

/// "all" followed by the individual suite names.
const std::vector<std::string>& verify_suites();

/// Throws InvalidParams for an unknown suite, even n, or d outside {1, 2}.
VerifyReport run_verify(const VerifyOptions& options);

}  // namespace psdo
