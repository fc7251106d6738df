#include "toml.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "stratsim/config.hpp"

namespace stratsim::detail {

namespace {

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw config_error(origin + ":" + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

// strips a trailing comment, respecting double-quoted strings
std::string strip_comment(const std::string& s) {
  bool in_string = false;
  for (size_t k = 0; k < s.size(); ++k) {
    if (s[k] == '"') in_string = !in_string;
    if (s[k] == '#' && !in_string) return s.substr(0, k);
  }
  return s;
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '-' &&
        c != '.') {
      return false;
    }
  }
  return true;
}

bool parse_integer(const std::string& s, std::int64_t& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc{} && res.ptr == last;
}

bool parse_float(const std::string& s, double& out) {
  const char* first = s.data();
  const char* last = s.data() + s.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc{} && res.ptr == last;
}

TomlValue parse_scalar(const std::string& origin, int line, const std::string& raw) {
  TomlValue v;
  v.line = line;
  if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
    v.data = raw.substr(1, raw.size() - 2);
    return v;
  }
  if (raw == "true") {
    v.data = true;
    return v;
  }
  if (raw == "false") {
    v.data = false;
    return v;
  }
  std::int64_t i;
  if (parse_integer(raw, i)) {
    v.data = i;
    return v;
  }
  double d;
  if (parse_float(raw, d)) {
    v.data = d;
    return v;
  }
  fail(origin, line, "cannot parse value '" + raw + "'");
}

TomlValue parse_array(const std::string& origin, int line, const std::string& raw) {
  TomlValue v;
  v.line = line;
  std::vector<double> items;
  std::string inner = trim(raw.substr(1, raw.size() - 2));
  if (!inner.empty()) {
    std::stringstream ss(inner);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (item.empty()) fail(origin, line, "empty array element");
      TomlValue scalar = parse_scalar(origin, line, item);
      if (!scalar.is_number()) {
        fail(origin, line, "arrays may hold numbers only");
      }
      items.push_back(scalar.as_double());
    }
  }
  v.data = std::move(items);
  return v;
}

}  // namespace

TomlTable parse_toml(const std::string& text, const std::string& origin) {
  TomlTable table;
  std::istringstream stream(text);
  std::string raw_line;
  std::string section;
  int line_no = 0;
  while (std::getline(stream, raw_line)) {
    ++line_no;
    std::string line = trim(strip_comment(raw_line));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(origin, line_no, "unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      if (!valid_key(section)) {
        fail(origin, line_no, "invalid section name '" + section + "'");
      }
      continue;
    }

    size_t eq = std::string::npos;
    bool in_string = false;
    for (size_t k = 0; k < line.size(); ++k) {
      if (line[k] == '"') in_string = !in_string;
      if (line[k] == '=' && !in_string) {
        eq = k;
        break;
      }
    }
    if (eq == std::string::npos) fail(origin, line_no, "expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (!valid_key(key)) fail(origin, line_no, "invalid key '" + key + "'");
    if (value.empty()) fail(origin, line_no, "missing value for '" + key + "'");

    std::string path = section.empty() ? key : section + "." + key;
    if (table.count(path)) {
      fail(origin, line_no, "duplicate key '" + path + "'");
    }
    if (value.front() == '[') {
      if (value.back() != ']') fail(origin, line_no, "unterminated array");
      table[path] = parse_array(origin, line_no, value);
    } else {
      table[path] = parse_scalar(origin, line_no, value);
    }
  }
  return table;
}

TomlTable parse_toml_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw config_error("cannot open config file: " + path.string());
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_toml(buffer.str(), path.string());
}

}  // namespace stratsim::detail
