#pragma once

#include <stdexcept>
#include <string>

namespace ehrelay {

/// Invalid SystemConfig / McConfig or a policy applied outside its domain.
class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the supported domain of a numerical routine.
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature exhausted its panel budget.
class QuadratureError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Exhaustive scheduling would enumerate more combinations than allowed.
class EnumerationLimitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Not enough usable points for a diversity-slope regression.
class FitError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace ehrelay
