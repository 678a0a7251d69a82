#pragma once

// Flat key-value run configuration.
//
//   # comment
//   solver = P2Omega
//   omega = 0.3
//   cells = 300
//
// Keys are free-form here; the CLI decides which ones it reads. Later
// assignments (and CLI flags, merged on top) win.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hybridflux/dissipation.hpp"

namespace hybridflux {

class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  /// Throws ConfigError with the line number on malformed input.
  static KeyValueConfig parse(std::string_view text, const std::string& origin = "<text>");
  static KeyValueConfig load(const std::filesystem::path& path);

  void set(const std::string& key, std::string value);
  bool contains(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

  std::optional<std::string> get_string(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  std::optional<std::size_t> get_size(const std::string& key) const;

 private:
  std::map<std::string, std::string> entries_;
};

/// "HLL", "P2Omega(0.3)", "p2-omega(0.5)". Throws ConfigError.
SolverSpec parse_solver_spec(std::string_view text);
/// Comma-separated specs; parentheses may contain no commas. An empty or
/// all-blank string yields an empty list.
std::vector<SolverSpec> parse_solver_list(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);

}  // namespace hybridflux
