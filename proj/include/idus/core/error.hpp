#pragma once

#include <stdexcept>
#include <string>

namespace idus {

struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionError : ArgumentError {
  using ArgumentError::ArgumentError;
};

struct DegenerateInputError : std::domain_error {
  using std::domain_error::domain_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require_arg(bool cond, const std::string& msg) {
  if (!cond) throw ArgumentError(msg);
}

inline void require_dim(bool cond, const std::string& msg) {
  if (!cond) throw DimensionError(msg);
}

inline void require_finite_value(double v, const std::string& msg) {
  if (!(v == v) || v > 1e300 || v < -1e300) throw ArgumentError(msg);
}

}  // namespace idus
