#ifndef CATONI_ERRORS_HPP
#define CATONI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace catoni {

/// Failure categories. The CLI maps each one to its own exit status.
enum class ErrorKind {
  Parameter,       // argument outside its admissible range
  Domain,          // input outside the mathematical domain of a function
  Infeasible,      // a sample-size / confidence condition does not hold
  DegenerateData,  // data too degenerate for the estimator (e.g. zero spread)
  Numerical        // an iterative method failed to converge or bracket
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class ParameterError : public Error {
 public:
  explicit ParameterError(const std::string& what)
      : Error(ErrorKind::Parameter, what) {}
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what)
      : Error(ErrorKind::Domain, what) {}
};

/// Carries the name of the violated condition so callers can report it.
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::string condition, const std::string& what)
      : Error(ErrorKind::Infeasible, what), condition_(std::move(condition)) {}
  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

class DegenerateDataError : public Error {
 public:
  explicit DegenerateDataError(const std::string& what)
      : Error(ErrorKind::DegenerateData, what) {}
};

class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what)
      : Error(ErrorKind::Numerical, what) {}
};

}  // namespace catoni

#endif  // CATONI_ERRORS_HPP
