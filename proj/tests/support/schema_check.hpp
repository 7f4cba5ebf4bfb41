#pragma once

#include <regex>
#include <string>
#include <vector>

#include <json.hpp>

// Validator for the subset of JSON Schema used by the shipped report schema:
// type, enum, required, properties, additionalProperties=false, items,
// minItems/maxItems, minimum, pattern and local "#/$defs/..." references.
class SchemaCheck {
 public:
  explicit SchemaCheck(nlohmann::json root) : root_(std::move(root)) {}

  std::vector<std::string> validate(const nlohmann::json& doc) const {
    std::vector<std::string> errors;
    check(root_, doc, "$", errors);
    return errors;
  }

 private:
  static bool has_type(const nlohmann::json& v, const std::string& t) {
    if (t == "null") return v.is_null();
    if (t == "boolean") return v.is_boolean();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    if (t == "string") return v.is_string();
    if (t == "array") return v.is_array();
    if (t == "object") return v.is_object();
    return false;
  }

  const nlohmann::json& resolve(const nlohmann::json& schema) const {
    if (!schema.contains("$ref")) return schema;
    const std::string ref = schema["$ref"];
    const std::string prefix = "#/$defs/";
    return root_["$defs"].at(ref.substr(prefix.size()));
  }

  void check(const nlohmann::json& raw, const nlohmann::json& v, const std::string& path,
             std::vector<std::string>& errors) const {
    const nlohmann::json& s = resolve(raw);
    if (s.contains("type")) {
      bool ok = false;
      if (s["type"].is_array()) {
        for (const auto& t : s["type"]) ok = ok || has_type(v, t);
      } else {
        ok = has_type(v, s["type"]);
      }
      if (!ok) {
        errors.push_back(path + ": type " + std::string(v.type_name()) + " not allowed by " + s["type"].dump());
        return;
      }
    }
    if (v.is_null()) return;
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) found = found || e == v;
      if (!found) errors.push_back(path + ": " + v.dump() + " not in enum");
    }
    if (s.contains("pattern") && v.is_string() && !std::regex_match(v.get<std::string>(), std::regex(s["pattern"].get<std::string>()))) {
      errors.push_back(path + ": '" + v.get<std::string>() + "' does not match pattern");
    }
    if (s.contains("minimum") && v.is_number() && v.get<double>() < s["minimum"].get<double>()) {
      errors.push_back(path + ": below minimum");
    }
    if (v.is_object()) {
      if (s.contains("required")) {
        for (const auto& r : s["required"]) {
          if (!v.contains(r.get<std::string>())) errors.push_back(path + ": missing '" + r.get<std::string>() + "'");
        }
      }
      const bool closed = s.contains("additionalProperties") && s["additionalProperties"] == false;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (s.contains("properties") && s["properties"].contains(it.key())) {
          check(s["properties"][it.key()], it.value(), path + "." + it.key(), errors);
        } else if (closed) {
          errors.push_back(path + ": unexpected property '" + it.key() + "'");
        }
      }
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) errors.push_back(path + ": too few items");
      if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>()) errors.push_back(path + ": too many items");
      if (s.contains("items")) {
        for (std::size_t i = 0; i < v.size(); ++i) check(s["items"], v[i], path + "[" + std::to_string(i) + "]", errors);
      }
    }
  }

  nlohmann::json root_;
};

// Number of null leaves below `v`.
inline std::size_t count_nulls(const nlohmann::json& v) {
  if (v.is_null()) return 1;
  std::size_t n = 0;
  if (v.is_structured()) {
    for (const auto& child : v) n += count_nulls(child);
  }
  return n;
}
