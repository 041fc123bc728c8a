#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace chemotaxis {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A parameter, grid or scenario violates one of its invariants.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// An argument lies outside the domain of a function (log of a nonpositive value, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Negative discriminant in the characteristic-speed formula.
class HyperbolicityLoss : public Error {
 public:
  using Error::Error;
};

/// Unknown preset name.
class LookupError : public Error {
 public:
  using Error::Error;
};

/// Raised by a stepper when the updated cell density is no longer positive.
class PositivityLoss : public Error {
 public:
  PositivityLoss(std::size_t node, double time, double value);

  std::size_t node() const noexcept { return node_; }
  double time() const noexcept { return time_; }
  double value() const noexcept { return value_; }

 private:
  std::size_t node_;
  double time_;
  double value_;
};

/// Raised by a stepper when a NaN or Inf appears in the state.
class Instability : public Error {
 public:
  Instability(std::size_t node, double time);

  std::size_t node() const noexcept { return node_; }
  double time() const noexcept { return time_; }

 private:
  std::size_t node_;
  double time_;
};

}  // namespace chemotaxis
