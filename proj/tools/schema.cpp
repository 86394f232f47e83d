#include "schema.hpp"

#include "embedded_schemas.hpp"
#include "psdo/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace psdo::cli {

namespace {

bool has_type(const nlohmann::json& v, const std::string& type) {
  if (type == "object") return v.is_object();
  if (type == "array") return v.is_array();
  if (type == "string") return v.is_string();
  if (type == "boolean") return v.is_boolean();
  if (type == "null") return v.is_null();
  if (type == "number") return v.is_number();
  if (type == "integer") {
    if (v.is_number_integer()) return true;
    return v.is_number_float() && std::floor(v.get<double>()) == v.get<double>();
  }
  return false;
}

void check(const nlohmann::json& v, const nlohmann::json& s, const std::string& where, std::vector<std::string>& out) {
  if (s.contains("type")) {
    std::vector<std::string> types;
    if (s["type"].is_array()) {
      for (const auto& t : s["type"]) types.push_back(t.get<std::string>());
    } else {
      types.push_back(s["type"].get<std::string>());
    }
    if (std::none_of(types.begin(), types.end(), [&](const std::string& t) { return has_type(v, t); })) {
      out.push_back(where + ": expected " + s["type"].dump() + ", got " + v.type_name());
      return;
    }
  }
  if (s.contains("enum")) {
    const auto& e = s["enum"];
    if (std::find(e.begin(), e.end(), v) == e.end()) out.push_back(where + ": " + v.dump() + " not in " + e.dump());
  }
  if (v.is_number()) {
    const double x = v.get<double>();
    if (s.contains("minimum") && x < s["minimum"].get<double>()) {
      out.push_back(where + ": " + v.dump() + " below minimum " + s["minimum"].dump());
    }
    if (s.contains("maximum") && x > s["maximum"].get<double>()) {
      out.push_back(where + ": " + v.dump() + " above maximum " + s["maximum"].dump());
    }
  }
  if (v.is_object()) {
    if (s.contains("required")) {
      for (const auto& key : s["required"]) {
        if (!v.contains(key.get<std::string>())) out.push_back(where + ": missing required key " + key.dump());
      }
    }
    const nlohmann::json props = s.value("properties", nlohmann::json::object());
    for (const auto& [key, item] : v.items()) {
      const std::string path = where + "." + key;
      if (props.contains(key)) {
        check(item, props[key], path, out);
      } else if (s.contains("additionalProperties")) {
        const auto& extra = s["additionalProperties"];
        if (extra.is_boolean()) {
          if (!extra.get<bool>()) out.push_back(path + ": unknown key");
        } else {
          check(item, extra, path, out);
        }
      }
    }
  }
  if (v.is_array() && s.contains("items")) {
    for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s["items"], where + "[" + std::to_string(i) + "]", out);
  }
}

}  // namespace

std::vector<std::string> schema_names() {
  std::vector<std::string> names;
  for (const auto& [key, body] : detail::embedded_schemas()) names.push_back(key);
  return names;
}

const nlohmann::json& schema(const std::string& name) {
  static const std::map<std::string, nlohmann::json> parsed = [] {
    std::map<std::string, nlohmann::json> m;
    for (const auto& [key, body] : detail::embedded_schemas()) m.emplace(key, nlohmann::json::parse(body));
    return m;
  }();
  const auto it = parsed.find(name);
  if (it == parsed.end()) throw Error(Errc::invalid_params, "no schema named '" + name + "'");
  return it->second;
}

std::vector<std::string> schema_violations(const nlohmann::json& value, const nlohmann::json& s) {
  std::vector<std::string> out;
  check(value, s, "$", out);
  return out;
}

void validate(const nlohmann::json& value, const std::string& schema_name) {
  const auto problems = schema_violations(value, schema(schema_name));
  if (problems.empty()) return;
  std::string msg = schema_name + " rejected:";
  for (const auto& p : problems) msg += "\n  " + p;
  throw Error(Errc::invalid_params, msg);
}

}  // namespace psdo::cli
