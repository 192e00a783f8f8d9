#ifndef FOEVAL_ERROR_HPP
#define FOEVAL_ERROR_HPP

#include <stdexcept>
#include <string>

namespace foeval {

// Base class for all library errors. CLI maps any Error to a nonzero exit.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Violated value-level precondition (bad argument, malformed domain object).
struct InvalidInput : Error {
  explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

// Index or position outside the addressable range.
struct RangeError : Error {
  explicit RangeError(const std::string& msg) : Error(msg) {}
};

// Inconsistent configuration (e.g. grid resolution not dividing the rate).
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Malformed input file (WAV/CSV/config).
struct ParseError : Error {
  explicit ParseError(const std::string& msg) : Error(msg) {}
};

}  // namespace foeval

#endif  // FOEVAL_ERROR_HPP
