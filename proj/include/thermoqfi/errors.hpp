#pragma once

#include <stdexcept>
#include <string>

namespace thermoqfi {

/// Input violates a documented precondition (non-Hermitian matrix, bad
/// dimensions, negative probability, ...).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed its accuracy contract (eigensolver
/// non-convergence, overflow, residual above tolerance).
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual = 0.0)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Requested quantity is not defined for the given encoding.
class UnsupportedEncodingError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed sweep configuration. The message carries the field path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field_path, const std::string& message)
      : std::runtime_error(field_path + ": " + message), field_path_(field_path) {}

  const std::string& field_path() const noexcept { return field_path_; }

 private:
  std::string field_path_;
};

}  // namespace thermoqfi
