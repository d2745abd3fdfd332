#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>

#include "json.hpp"

#include "critters/diagnostic.hpp"
#include "critters/errors.hpp"

// Strict readers shared by every JSON format in the project. All of them throw
// SchemaError naming the offending location.
namespace critters::json_util {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& where, const std::string& what) {
  throw SchemaError(where + ": " + what);
}

// Every key in `required` must be present; keys outside required+optional are rejected.
inline void expect_keys(const json& j, const std::string& where, std::initializer_list<std::string_view> required,
                        std::initializer_list<std::string_view> optional = {}) {
  if (!j.is_object()) fail(where, "expected an object");
  for (const auto& [key, _] : j.items()) {
    bool known = false;
    for (auto k : required) known = known || k == key;
    for (auto k : optional) known = known || k == key;
    if (!known) fail(where, "unexpected key '" + key + "'");
  }
  for (auto k : required) {
    if (!j.contains(std::string(k))) fail(where, "missing key '" + std::string(k) + "'");
  }
}

inline bool is_non_negative_integer(const json& j) {
  return j.is_number_unsigned() || (j.is_number_integer() && j.get<std::int64_t>() >= 0);
}

inline std::uint64_t unsigned_of(const json& j, const std::string& where) {
  if (!is_non_negative_integer(j)) fail(where, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

inline std::int64_t integer_of(const json& j, const std::string& where) {
  if (!j.is_number_integer()) fail(where, "expected an integer");
  return j.get<std::int64_t>();
}

inline std::string string_of(const json& j, const std::string& where) {
  if (!j.is_string()) fail(where, "expected a string");
  return j.get<std::string>();
}

inline const json& array_of(const json& j, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  return j;
}

inline const json& object_of(const json& j, const std::string& where) {
  if (!j.is_object()) fail(where, "expected an object");
  return j;
}

inline Pos pos_of(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    fail(where, "expected a position [x,y]");
  }
  return Pos{j[0].get<int>(), j[1].get<int>()};
}

inline AstPath path_of(const json& j, const std::string& where) {
  AstPath out;
  for (std::size_t i = 0; i < array_of(j, where).size(); ++i) {
    out.push_back(unsigned_of(j[i], where + "[" + std::to_string(i) + "]"));
  }
  return out;
}

}  // namespace critters::json_util
