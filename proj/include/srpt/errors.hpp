#pragma once

#include <stdexcept>

namespace srpt {

struct QuadratureNotConverged : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnboundedSupportRequired : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DivisionByZeroTail : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OutOfHorizon : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NegativeInitialValue : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EventLogMissing : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GridMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidLevels : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EmptySample : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigInvalid : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace srpt
