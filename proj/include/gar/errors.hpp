#ifndef GAR_ERRORS_HPP
#define GAR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gar {

// Error taxonomy used across the library. All derive from std::runtime_error
// so callers can catch coarsely; the CLI maps each type to a machine-readable
// error code.

struct InputError : std::runtime_error {
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

struct LengthError : InputError {
  explicit LengthError(const std::string& msg) : InputError(msg) {}
};

struct DomainError : InputError {
  explicit DomainError(const std::string& msg) : InputError(msg) {}
};

struct AlignmentError : InputError {
  explicit AlignmentError(const std::string& msg) : InputError(msg) {}
};

struct ShapeError : InputError {
  explicit ShapeError(const std::string& msg) : InputError(msg) {}
};

struct ParameterError : InputError {
  explicit ParameterError(const std::string& msg) : InputError(msg) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct SchemaError : ConfigError {
  explicit SchemaError(const std::string& msg) : ConfigError(msg) {}
};

// A required upstream artifact is missing; `producer` names the command that
// would create it.
struct DependencyError : std::runtime_error {
  DependencyError(const std::string& msg, std::string producer_cmd)
      : std::runtime_error(msg), producer(std::move(producer_cmd)) {}
  std::string producer;
};

struct NumericError : std::runtime_error {
  explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace gar

#endif  // GAR_ERRORS_HPP
