#pragma once

#include <stdexcept>
#include <string>

namespace halfline {

/// Malformed or unsupported input (bad regime mix, wrong potential kind, ...).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite section that is singular or numerically singular.
class SingularSection : public std::runtime_error {
 public:
  SingularSection(const std::string& what, double sigma_min_estimate)
      : std::runtime_error(what), sigma_min_(sigma_min_estimate) {}

  double sigma_min_estimate() const noexcept { return sigma_min_; }

 private:
  double sigma_min_;
};

/// A computation that could not reach a decision within its budget.
class Inconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace halfline
