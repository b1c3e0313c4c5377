#ifndef WAHBA_ERRORS_HPP
#define WAHBA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wahba {

// Numerical failures (CLI exit code 2).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotUnit : NumericalError {
  explicit NotUnit(const std::string& what) : NumericalError("NotUnit: " + what) {}
};

struct NearSingular : NumericalError {
  explicit NearSingular(const std::string& what) : NumericalError("NearSingular: " + what) {}
};

struct NoConvergence : NumericalError {
  explicit NoConvergence(const std::string& what) : NumericalError("NoConvergence: " + what) {}
};

struct DivergenceDetected : NumericalError {
  explicit DivergenceDetected(const std::string& what)
      : NumericalError("DivergenceDetected: " + what) {}
};

struct ConvergenceViolation : NumericalError {
  explicit ConvergenceViolation(const std::string& what)
      : NumericalError("ConvergenceViolation: " + what) {}
};

// Input/configuration problems (CLI exit code 1).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InvalidMeasurement : InputError {
  explicit InvalidMeasurement(const std::string& what)
      : InputError("InvalidMeasurement: " + what) {}
};

struct ConfigError : InputError {
  explicit ConfigError(const std::string& what) : InputError("ConfigError: " + what) {}
};

}  // namespace wahba

#endif  // WAHBA_ERRORS_HPP
