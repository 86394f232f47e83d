#pragma once

#include <stdexcept>
#include <string>

namespace psdo {

enum class Errc {
  invalid_params,
  mode_mismatch,
  domain_mismatch,
  zero_window,
  size_limit,
  arity_mismatch,
  too_few_entries,
  invalid_exponent,
  dim_mismatch,
  unsupported_dimension,
  invalid_dimension,
  io_error,
};

const char* errc_name(Errc code) noexcept;

/// Every failure raised by the library. The CLI maps `io_error` to exit
/// code 2 and everything else to exit code 3.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace psdo
