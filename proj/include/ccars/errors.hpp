#pragma once

#include <stdexcept>
#include <string>

namespace ccars {

struct InvalidParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Adiabatic elimination divides by the one-photon detunings.
struct SingularReduction : std::domain_error {
  using std::domain_error::domain_error;
};

struct UndefinedAngle : std::domain_error {
  using std::domain_error::domain_error;
};

struct IntegrationDiverged : std::runtime_error {
  IntegrationDiverged(const std::string& what, double t, std::size_t step)
      : std::runtime_error(what), time(t), step_index(step) {}
  double time;
  std::size_t step_index;
};

struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace ccars
