#pragma once

#include <stdexcept>
#include <string>

namespace okse {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid argument, configuration, or input shape (includes unsupported
/// framing configurations and mode mismatches).
struct InvalidParameterError : Error {
  using Error::Error;
};

/// Key dimension or branch count does not match the data it is applied to.
struct KeyMismatchError : Error {
  using Error::Error;
};

/// A file does not parse: bad magic, version, shape, truncation, CRC.
struct FormatError : Error {
  using Error::Error;
};

/// A file parses but its contents violate an invariant (e.g. a stored key
/// matrix is not orthogonal).
struct IntegrityError : Error {
  using Error::Error;
};

/// Metric is undefined for the given inputs (no reference words, missing
/// score class, zero vector).
struct MetricError : Error {
  using Error::Error;
};

struct IoError : Error {
  using Error::Error;
};

}  // namespace okse
