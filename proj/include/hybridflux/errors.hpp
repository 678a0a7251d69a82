#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace hybridflux {

/// A state left the admissible set (non-positive density or pressure,
/// non-finite entries, wrong length).
class InvalidStateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A flux or update produced a non-finite value or an inadmissible state.
/// Location fields are filled in as the error travels up through the engine.
class NumericFailure : public std::runtime_error {
 public:
  explicit NumericFailure(const std::string& what,
                          std::optional<std::size_t> interface_index = std::nullopt,
                          std::optional<std::size_t> step_index = std::nullopt)
      : std::runtime_error(what),
        interface_index_(interface_index),
        step_index_(step_index) {}

  std::optional<std::size_t> interface_index() const { return interface_index_; }
  std::optional<std::size_t> step_index() const { return step_index_; }

 private:
  std::optional<std::size_t> interface_index_;
  std::optional<std::size_t> step_index_;
};

/// Bad run configuration or CLI input.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace hybridflux
