#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace stratsim::detail {

// Minimal TOML subset used by the run configs: [section] headers, bare keys,
// strings, integers, floats, booleans and flat numeric arrays. No external
// TOML library is available in the build environment, so this stays small
// and strict; errors carry the line number.
struct TomlValue {
  std::variant<std::string, double, std::int64_t, bool, std::vector<double>> data;
  int line = 0;

  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_number() const {
    return std::holds_alternative<double>(data) ||
           std::holds_alternative<std::int64_t>(data);
  }
  bool is_integer() const { return std::holds_alternative<std::int64_t>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_array() const {
    return std::holds_alternative<std::vector<double>>(data);
  }
  double as_double() const {
    return is_integer() ? static_cast<double>(std::get<std::int64_t>(data))
                        : std::get<double>(data);
  }
};

// Dotted path ("physics.kappa") -> value.
using TomlTable = std::map<std::string, TomlValue>;

TomlTable parse_toml(const std::string& text, const std::string& origin);
TomlTable parse_toml_file(const std::filesystem::path& path);

}  // namespace stratsim::detail
