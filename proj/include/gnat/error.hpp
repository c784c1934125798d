#pragma once

#include <stdexcept>
#include <string>

namespace gnat {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class OutOfChart : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  using Error::Error;
};

class SingularMetric : public Error {
 public:
  using Error::Error;
};

// |alpha(t) * phi(t)| fell under the degeneracy threshold.
class DegenerateAt : public Error {
 public:
  explicit DegenerateAt(double t)
      : Error("g-natural metric is degenerate at t = " + std::to_string(t)), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

// alpha1 (alpha1 + alpha3) or phi1 (phi1 + phi3) vanishes, so the block
// inverse formulas do not apply even though G may be nondegenerate.
class SideConditionFailed : public Error {
 public:
  SideConditionFailed(double t, const std::string& what)
      : Error("inverse side condition failed at t = " + std::to_string(t) + ": " + what),
        t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

class SingularMu : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public Error {
 public:
  using Error::Error;
};

class DegeneratePlane : public Error {
 public:
  using Error::Error;
};

class ProfileFormatError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace gnat
