#pragma once

#include <stdexcept>
#include <string>

namespace nesim {

// Error categories map onto CLI exit codes (validation=2, numerical=3, io=4).
enum class ErrorCategory { Validation, Numerical, Io };

class Error : public std::runtime_error {
public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const { return category_; }

private:
  ErrorCategory category_;
};

class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& what)
      : Error(ErrorCategory::Validation, what) {}
};

class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorCategory::Numerical, what) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what)
      : Error(ErrorCategory::Io, what) {}
};

// A diagonal estimator entry dropped below the positivity floor during
// integration. Usually means the step size is too large for the chosen gain.
class DegenerateEstimate : public NumericalError {
public:
  explicit DegenerateEstimate(const std::string& what) : NumericalError(what) {}
};

class NonFinite : public NumericalError {
public:
  explicit NonFinite(const std::string& what) : NumericalError(what) {}
};

class CertificateViolated : public NumericalError {
public:
  CertificateViolated(double time, const std::string& what)
      : NumericalError(what), time_(time) {}
  double time() const { return time_; }

private:
  double time_;
};

class InsufficientData : public NumericalError {
public:
  explicit InsufficientData(const std::string& what) : NumericalError(what) {}
};

}  // namespace nesim
