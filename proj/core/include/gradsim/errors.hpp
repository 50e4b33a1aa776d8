#pragma once

#include <stdexcept>
#include <string>

namespace gradsim {

/// Base class for all computation errors raised by the toolkit.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A field evaluation was requested at a point inside or on the surface of a
/// mass body. The message echoes the offending point.
class FieldPointInsideBody : public Error {
 public:
  using Error::Error;
};

/// A finite-difference probe point would fall inside a body; the requested
/// step does not fit the geometry.
class StepTooLargeForGeometry : public Error {
 public:
  using Error::Error;
};

/// A sampling range is degenerate (r_max <= r_min).
class DegenerateRange : public Error {
 public:
  using Error::Error;
};

/// Adaptive quadrature exhausted its interval budget before the error
/// estimate dropped below the requested tolerance.
class QuadratureNotConverged : public Error {
 public:
  using Error::Error;
};

/// An instrument lacks the noise density needed for a requested observable.
class MissingNoiseDensity : public Error {
 public:
  using Error::Error;
};

/// Invalid or missing configuration input. The message names the offending
/// key or parameter.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace gradsim
