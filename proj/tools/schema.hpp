#pragma once

// The JSON Schema subset used by the shipped schemas: type (including
// "integer" and type lists), enum, minimum, maximum, required, properties,
// additionalProperties and items.

#include <json.hpp>

#include <string>
#include <vector>

namespace psdo::cli {

/// Keys of the compiled-in schemas, e.g. "manifest" or "params/quantize".
std::vector<std::string> schema_names();
const nlohmann::json& schema(const std::string& name);

/// Empty when `value` conforms; otherwise one message per violation.
std::vector<std::string> schema_violations(const nlohmann::json& value, const nlohmann::json& schema);

/// Throws InvalidParams listing the violations.
void validate(const nlohmann::json& value, const std::string& schema_name);

}  // namespace psdo::cli
