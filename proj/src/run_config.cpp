#include "hybridflux/run_config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "hybridflux/errors.hpp"

namespace hybridflux {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double to_double(std::string_view text, std::string_view what) {
  const std::string s(trim(text));
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (s.empty() || used != s.size()) {
    throw ConfigError("expected a number for " + std::string(what) + ", got '" + s + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(trim(text.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::string_view text, const std::string& origin) {
  KeyValueConfig config;
  std::size_t line_no = 0;
  for (std::string_view line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = trim(line.substr(0, hash));
    }
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key(trim(line.substr(0, eq)));
    if (key.empty()) {
      throw ConfigError(origin + ":" + std::to_string(line_no) + ": empty key");
    }
    config.set(key, std::string(trim(line.substr(eq + 1))));
  }
  return config;
}

KeyValueConfig KeyValueConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

void KeyValueConfig::set(const std::string& key, std::string value) {
  std::string normalized = key;
  for (char& c : normalized) {
    if (c == '-') c = '_';
  }
  entries_[normalized] = std::move(value);
}

bool KeyValueConfig::contains(const std::string& key) const {
  return entries_.count(key) != 0;
}

std::optional<std::string> KeyValueConfig::get_string(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

std::optional<double> KeyValueConfig::get_double(const std::string& key) const {
  const auto s = get_string(key);
  if (!s) return std::nullopt;
  return to_double(*s, key);
}

std::optional<std::size_t> KeyValueConfig::get_size(const std::string& key) const {
  const auto s = get_string(key);
  if (!s) return std::nullopt;
  const std::string_view text = trim(*s);
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("expected a non-negative integer for " + key + ", got '" + *s + "'");
  }
  return value;
}

SolverSpec parse_solver_spec(std::string_view text) {
  text = trim(text);
  SolverSpec spec;
  std::string_view name = text;
  std::optional<double> omega;
  if (const auto open = text.find('('); open != std::string_view::npos) {
    if (text.back() != ')') {
      throw ConfigError("malformed solver spec '" + std::string(text) + "'");
    }
    name = trim(text.substr(0, open));
    omega = to_double(text.substr(open + 1, text.size() - open - 2), "omega");
  }
  try {
    spec.kind = parse_solver_kind(name);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (omega) {
    if (!uses_omega(spec.kind)) {
      throw ConfigError("solver " + std::string(name) + " takes no omega parameter");
    }
    spec.omega = *omega;
  }
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return spec;
}

std::vector<SolverSpec> parse_solver_list(std::string_view text) {
  std::vector<SolverSpec> specs;
  if (trim(text).empty()) return specs;
  for (auto part : split(text, ',')) specs.push_back(parse_solver_spec(part));
  return specs;
}

std::vector<double> parse_double_list(std::string_view text) {
  std::vector<double> values;
  if (trim(text).empty()) return values;
  for (auto part : split(text, ',')) values.push_back(to_double(part, "list entry"));
  return values;
}

}  // namespace hybridflux
