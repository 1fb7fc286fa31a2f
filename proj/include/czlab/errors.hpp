#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace czlab {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the documented domain (bad interval, n = 0, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Non-symmetric generator, NaN or overflow during integration.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Crossings too close to be separated at the current grid resolution.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// Crossing form singular on the kernel; the index is undefined.
class IrregularCrossingError : public Error {
 public:
  using Error::Error;
};

/// Crossing sitting on an open endpoint of an index window.
class EndpointCrossingError : public Error {
 public:
  using Error::Error;
};

/// Time-1 linearized flow has eigenvalue 1.
class DegenerateError : public Error {
 public:
  using Error::Error;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "scenario is not an Ustilovsky geodesic:";
    for (const auto& s : v) out += "\n  - " + s;
    return out;
  }
  std::vector<std::string> violations_;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace czlab
