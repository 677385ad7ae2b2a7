#pragma once

#include <set>
#include <string>

#include "json.hpp"

#include "sitassess/errors.hpp"

namespace sitassess::detail {

using Json = nlohmann::ordered_json;

/// Reads the fields of one JSON object, tracking its path for error
/// messages. `finish` rejects fields that were never asked for.
class StrictObject {
 public:
  StrictObject(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  const Json& field(const std::string& key) {
    if (!j_.contains(key)) fail(path_ + "." + key, "missing field");
    seen_.insert(key);
    return j_.at(key);
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  std::string string(const std::string& key) {
    const Json& v = field(key);
    if (!v.is_string()) fail(path_ + "." + key, "expected a string");
    return v.get<std::string>();
  }

  std::int64_t integer(const std::string& key) {
    const Json& v = field(key);
    if (!v.is_number_integer()) fail(path_ + "." + key, "expected an integer");
    return v.get<std::int64_t>();
  }

  double number(const std::string& key) {
    const Json& v = field(key);
    if (!v.is_number()) fail(path_ + "." + key, "expected a number");
    return v.get<double>();
  }

  bool boolean(const std::string& key) {
    const Json& v = field(key);
    if (!v.is_boolean()) fail(path_ + "." + key, "expected a boolean");
    return v.get<bool>();
  }

  const Json& array(const std::string& key) {
    const Json& v = field(key);
    if (!v.is_array()) fail(path_ + "." + key, "expected an array");
    return v;
  }

  std::string child(const std::string& key) const { return path_ + "." + key; }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!seen_.contains(key)) fail(path_ + "." + key, "unknown field");
    }
  }

  [[noreturn]] static void fail(const std::string& path, const std::string& what) {
    throw FormatError(path + ": " + what);
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

inline std::string indexed(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

}  // namespace sitassess::detail
